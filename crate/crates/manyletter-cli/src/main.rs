//! Batch experiment driver for the manyletter library. Every
//! subcommand loads one TOML config, emits deterministic tab-separated
//! report sections, and exits nonzero on any invariant violation.

mod config;

use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use config::Config;
use manyletter::classical::{huffman_build, typical_set, BlockCode, ClassicalEnsemble};
use manyletter::lossless::{
    build_general_code, build_symbol_code, compress_grand_canonical, encoded_information_general,
    CoreInformationObservable,
};
use manyletter::schumacher::{
    build_schumacher, generalized_schumacher, measured_encoded_information, schumacher_audit,
    schumacher_confidence, JunkTarget, LetterEnsemble, SchumacherCode,
};
use manyletter::translate::{translation_information_audit, BlockTranslator};
use manyletter::{KrausChannel, LengthMode, MessageMatrix, PrefixCode, QuantumAlphabet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Integer,
    Ideal,
}

impl From<Mode> for LengthMode {
    fn from(m: Mode) -> LengthMode {
        match m {
            Mode::Integer => LengthMode::Integer,
            Mode::Ideal => LengthMode::Ideal,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "manyletter", version, about = "Variable-length quantum coding experiments")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Experiment configuration (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for report files; stdout only when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for random-ensemble generation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Maximum message length for truncated operator checks.
    #[arg(long, global = true, default_value_t = 6)]
    lmax: usize,
    /// Codeword-length mode.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Integer)]
    mode: Mode,
    /// Pass threshold for operator audits.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tolerance: f64,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Shannon and von Neumann entropies of a letter source.
    Entropy,
    /// Huffman code table for a distribution.
    Huffman,
    /// Kraft-inequality and prefix-freeness audit of given lengths or codewords.
    Kraft,
    /// Typical-set enumeration.
    Typical,
    /// Classical lossy block code over the typical set.
    BlockCode,
    /// Block translation between alphabets.
    Translate,
    /// Standard Schumacher code on rho^N.
    Schumacher,
    /// Generalized Schumacher code on a grand-canonical source.
    SchumacherGrand,
    /// Symbol-code compression of a grand-canonical source.
    LosslessGrand,
    /// General lossless code for an arbitrary message matrix.
    LosslessGeneral,
    /// Core-information observable of a message matrix.
    CoreInfo,
    /// Kraus completeness/unitality audit of a constructed channel.
    AuditChannel,
}

impl Cmd {
    fn name(&self) -> &'static str {
        match self {
            Cmd::Entropy => "entropy",
            Cmd::Huffman => "huffman",
            Cmd::Kraft => "kraft",
            Cmd::Typical => "typical",
            Cmd::BlockCode => "block-code",
            Cmd::Translate => "translate",
            Cmd::Schumacher => "schumacher",
            Cmd::SchumacherGrand => "schumacher-grand",
            Cmd::LosslessGrand => "lossless-grand",
            Cmd::LosslessGeneral => "lossless-general",
            Cmd::CoreInfo => "core-info",
            Cmd::AuditChannel => "audit-channel",
        }
    }
}

/// Tab-separated report: titled sections of rows.
#[derive(Default)]
struct Report {
    sections: Vec<(String, Vec<Vec<String>>)>,
}

impl Report {
    fn section(&mut self, title: &str) -> &mut Vec<Vec<String>> {
        self.sections.push((title.to_string(), Vec::new()));
        &mut self.sections.last_mut().unwrap().1
    }

    fn kv(&mut self, title: &str, pairs: &[(&str, String)]) {
        let rows = self.section(title);
        rows.push(vec!["quantity".into(), "value".into()]);
        for (k, v) in pairs {
            rows.push(vec![(*k).to_string(), v.clone()]);
        }
    }

    fn render(&self) -> String {
        let mut out = String::new();
        for (title, rows) in &self.sections {
            let _ = writeln!(out, "# {title}");
            for row in rows {
                let _ = writeln!(out, "{}", row.join("\t"));
            }
        }
        out
    }
}

fn fmt(x: f64) -> String {
    format!("{x:.12}")
}

fn bits_of(word: &str) -> Result<Vec<bool>> {
    word.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => bail!("codeword {word:?} contains a non-binary character"),
        })
        .collect()
}

fn string_of(s: &manyletter::BasisString) -> String {
    if s.is_empty() {
        "(empty)".to_string()
    } else {
        s.letters().iter().map(|a| a.to_string()).collect()
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(&cli) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn run(cli: &Cli) -> Result<()> {
    let config = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let mut report = Report::default();
    report.kv(
        "run manifest",
        &[
            ("subcommand", cli.cmd.name().to_string()),
            (
                "config",
                cli.config
                    .as_ref()
                    .map(|p| p.display().to_string())
                    .unwrap_or_else(|| "(none)".into()),
            ),
            ("seed", cli.seed.to_string()),
            ("lmax", cli.lmax.to_string()),
            ("mode", format!("{:?}", cli.mode).to_lowercase()),
            ("tolerance", format!("{:e}", cli.tolerance)),
            ("version", env!("CARGO_PKG_VERSION").to_string()),
        ],
    );

    let result = dispatch(cli, &config, &mut report);
    // Emit whatever was assembled even on failure, then propagate.
    let text = report.render();
    print!("{text}");
    if let Some(dir) = &cli.out {
        std::fs::create_dir_all(dir)
            .with_context(|| format!("cannot create {}", dir.display()))?;
        std::fs::write(dir.join(format!("{}.tsv", cli.cmd.name())), &text)?;
    }
    result
}

fn dispatch(cli: &Cli, config: &Config, report: &mut Report) -> Result<()> {
    match cli.cmd {
        Cmd::Entropy => cmd_entropy(cli, config, report),
        Cmd::Huffman => cmd_huffman(cli, config, report),
        Cmd::Kraft => cmd_kraft(config, report),
        Cmd::Typical => cmd_typical(cli, config, report),
        Cmd::BlockCode => cmd_block_code(cli, config, report),
        Cmd::Translate => cmd_translate(cli, config, report),
        Cmd::Schumacher => cmd_schumacher(cli, config, report),
        Cmd::SchumacherGrand => cmd_schumacher_grand(cli, config, report),
        Cmd::LosslessGrand => cmd_lossless_grand(cli, config, report),
        Cmd::LosslessGeneral => cmd_lossless_general(cli, config, report),
        Cmd::CoreInfo => cmd_core_info(cli, config, report),
        Cmd::AuditChannel => cmd_audit_channel(cli, config, report),
    }
}

/// Letter spectrum in the eigenbasis: from the probabilities directly,
/// or through the letter matrix when non-orthogonal letters are given.
fn spectrum_and_ensemble(cli: &Cli, config: &Config) -> Result<(Vec<f64>, LetterEnsemble)> {
    let probs = config.probs(cli.seed)?;
    match config.letters_complex() {
        None => Ok((probs.clone(), LetterEnsemble::eigenbasis(&probs))),
        Some(letters) => {
            let alphabet = QuantumAlphabet::new(letters)?;
            let rho = alphabet.letter_matrix(&probs)?;
            let coords: Vec<Vec<num_complex::Complex64>> = (0..alphabet.num_letters())
                .map(|x| alphabet.letter_coords(x).iter().copied().collect())
                .collect();
            Ok(manyletter::schumacher::eigenbasis_ensemble(
                &rho, &probs, &coords,
            )?)
        }
    }
}

fn cmd_entropy(cli: &Cli, config: &Config, report: &mut Report) -> Result<()> {
    let probs = config.probs(cli.seed)?;
    let h = manyletter::shannon_entropy(&probs)?;
    let (eigs, _) = spectrum_and_ensemble(cli, config)?;
    let s = manyletter::matrix::entropy_of_spectrum(&eigs);
    let mut pairs = vec![
        ("shannon_entropy", fmt(h)),
        ("von_neumann_entropy", fmt(s)),
    ];
    if let Some(n) = config.n {
        pairs.push(("entropy_tensor_power", fmt(n as f64 * s)));
        pairs.push(("n", n.to_string()));
    }
    report.kv("entropy", &pairs);
    Ok(())
}

fn huffman_table(report: &mut Report, code: &PrefixCode, probs: &[f64]) {
    let rows = report.section("codebook");
    rows.push(vec![
        "symbol".into(),
        "probability".into(),
        "codeword".into(),
        "length".into(),
    ]);
    for (i, sym) in code.symbols().iter().enumerate() {
        let word = match code.mode() {
            LengthMode::Integer => code
                .codeword(i)
                .iter()
                .map(|&b| if b { '1' } else { '0' })
                .collect(),
            LengthMode::Ideal => "-".to_string(),
        };
        rows.push(vec![
            sym.clone(),
            fmt(probs[i]),
            word,
            fmt(code.length(i)),
        ]);
    }
}

fn cmd_huffman(cli: &Cli, config: &Config, report: &mut Report) -> Result<()> {
    let probs = config.probs(cli.seed)?;
    let ensemble = match &config.symbols {
        Some(symbols) => ClassicalEnsemble::new(symbols.clone(), probs.clone())?,
        None => ClassicalEnsemble::from_probs(&probs)?,
    };
    let code = match cli.mode {
        Mode::Integer => huffman_build(&ensemble),
        Mode::Ideal => PrefixCode::ideal(&ensemble),
    };
    huffman_table(report, &code, &probs);
    let h = ensemble.shannon_entropy();
    let lbar = code.expected_length(&probs);
    report.kv(
        "summary",
        &[
            ("entropy", fmt(h)),
            ("mean_length", fmt(lbar)),
            ("kraft_sum", fmt(code.kraft_sum())),
            ("prefix_free", code.is_prefix_free().to_string()),
        ],
    );
    if cli.mode == Mode::Integer && !(lbar >= h - 1e-9 && lbar < h + 1.0) {
        bail!("Huffman mean length {lbar} violates the entropy sandwich around {h}");
    }
    Ok(())
}

fn cmd_kraft(config: &Config, report: &mut Report) -> Result<()> {
    let (lengths, prefix_free): (Vec<f64>, Option<bool>) = match (&config.codewords, &config.lengths)
    {
        (Some(words), _) => {
            let bits: Vec<Vec<bool>> = words.iter().map(|w| bits_of(w)).collect::<Result<_>>()?;
            let symbols = (0..bits.len()).map(|i| format!("s{i}")).collect();
            let code = PrefixCode::from_codewords(symbols, bits)?;
            (code.lengths().to_vec(), Some(code.is_prefix_free()))
        }
        (None, Some(lengths)) => (lengths.clone(), None),
        (None, None) => bail!("config needs `codewords` or `lengths`"),
    };
    let kraft: f64 = lengths.iter().map(|&l| 2f64.powf(-l)).sum();
    let ok = kraft <= 1.0 + 1e-12;
    let mut pairs = vec![
        ("kraft_sum", fmt(kraft)),
        ("satisfied", ok.to_string()),
    ];
    if let Some(pf) = prefix_free {
        pairs.push(("prefix_free", pf.to_string()));
    }
    report.kv("kraft", &pairs);
    if !ok {
        bail!("Kraft inequality violated: sum = {kraft}");
    }
    if prefix_free == Some(false) {
        bail!("codewords are not prefix-free");
    }
    Ok(())
}

fn cmd_typical(cli: &Cli, config: &Config, report: &mut Report) -> Result<()> {
    let probs = config.probs(cli.seed)?;
    let set = typical_set(&probs, config.n()?, config.delta()?)?;
    report.kv(
        "typical set",
        &[
            ("size", set.members.len().to_string()),
            ("total_prob", fmt(set.total_prob)),
            ("entropy", fmt(set.entropy)),
        ],
    );
    let rows = report.section("members (first 64)");
    rows.push(vec!["string".into(), "probability".into()]);
    for s in set.members.iter().take(64) {
        let p: f64 = s.letters().iter().map(|&x| probs[x as usize]).product();
        rows.push(vec![string_of(s), fmt(p)]);
    }
    Ok(())
}

fn cmd_block_code(cli: &Cli, config: &Config, report: &mut Report) -> Result<()> {
    let probs = config.probs(cli.seed)?;
    let set = typical_set(&probs, config.n()?, config.delta()?)?;
    let code = BlockCode::new(set);
    report.kv(
        "block code",
        &[
            ("typical_size", code.typical().members.len().to_string()),
            ("bits_per_block", code.bits.to_string()),
            ("junk_index", code.junk_index.to_string()),
            ("total_prob", fmt(code.typical().total_prob)),
        ],
    );
    Ok(())
}

fn cmd_translate(cli: &Cli, config: &Config, report: &mut Report) -> Result<()> {
    let source_dim = match (&config.probs, config.source_dim) {
        (_, Some(d)) => d,
        (Some(p), None) => p.len(),
        (None, None) => bail!("config needs `source_dim` or `probs`"),
    };
    let block = config.n.unwrap_or(1);
    let t = BlockTranslator::new(source_dim, config.code_dim(), block)?;
    report.kv(
        "translator",
        &[
            ("source_dim", source_dim.to_string()),
            ("code_dim", config.code_dim().to_string()),
            ("block_n", t.n.to_string()),
            ("block_m", t.m.to_string()),
            ("rate", fmt(t.rate())),
            ("tight", t.is_tight().to_string()),
        ],
    );
    let rows = report.section("block table (first 64)");
    rows.push(vec!["source".into(), "code".into()]);
    for (src, code) in t.table().into_iter().take(64) {
        rows.push(vec![string_of(&src), string_of(&code)]);
    }

    let channel = t.message_translator(cli.lmax - cli.lmax % block)?;
    check_channel(cli, report, "translator", &channel)?;

    if let Some(probs) = &config.probs {
        let rho = manyletter::matrix::diagonal_letter_matrix(probs);
        let sigma = MessageMatrix::canonical(&rho, block)?;
        let audit = translation_information_audit(&t, &sigma, block)?;
        report.kv(
            "information audit (single block)",
            &[
                ("raw", fmt(audit.raw)),
                ("encoded", fmt(audit.encoded)),
                ("ratio", fmt(audit.ratio)),
            ],
        );
        if audit.encoded < audit.raw - cli.tolerance {
            bail!("translation became compressive: I_c < I");
        }
    }
    Ok(())
}

fn check_channel(cli: &Cli, report: &mut Report, name: &str, ch: &KrausChannel) -> Result<()> {
    let kraus = ch.check_kraus();
    let unital = ch.check_unital();
    report.kv(
        &format!("channel audit: {name}"),
        &[
            ("kraus_frobenius", format!("{:e}", kraus.frobenius)),
            ("kraus_max_abs", format!("{:e}", kraus.max_abs)),
            ("unital_frobenius", format!("{:e}", unital.frobenius)),
            ("unital_max_abs", format!("{:e}", unital.max_abs)),
        ],
    );
    if kraus.max_abs > cli.tolerance {
        bail!(
            "channel {name} violates Kraus completeness: max deviation {:e} > {:e}",
            kraus.max_abs,
            cli.tolerance
        );
    }
    Ok(())
}

fn schumacher_sections(
    cli: &Cli,
    report: &mut Report,
    code: &SchumacherCode,
    lambdas: &[f64],
) -> Result<()> {
    let rows = report.section("sectors");
    rows.push(vec![
        "n".into(),
        "dim_V".into(),
        "rate".into(),
        "ideal_rate".into(),
        "P_T".into(),
    ]);
    for sector in &code.sectors {
        rows.push(vec![
            sector.typical.n.to_string(),
            sector.typical.dim().to_string(),
            sector.rate.to_string(),
            fmt(sector.ideal_rate),
            fmt(sector.typical.total_prob),
        ]);
    }
    let audit = schumacher_audit(code, lambdas)?;
    report.kv(
        "information audit",
        &[
            ("raw", fmt(audit.raw)),
            ("encoded_physical", fmt(audit.encoded_physical)),
            ("encoded_junk_discarded", fmt(audit.encoded_discarded)),
            ("P_T", fmt(audit.p_t)),
            ("fidelity_bound", fmt(2.0 * audit.p_t - 1.0)),
        ],
    );
    check_channel(cli, report, "encoder", &code.pair.encoder)?;
    check_channel(cli, report, "decoder", &code.pair.decoder)?;
    Ok(())
}

fn cmd_schumacher(cli: &Cli, config: &Config, report: &mut Report) -> Result<()> {
    let (eigs, ensemble) = spectrum_and_ensemble(cli, config)?;
    let n = config.n()?;
    let code = build_schumacher(&eigs, n, config.delta()?, config.code_dim(), JunkTarget::EmptyMessage)?;
    let mut lambdas = vec![0.0; n + 1];
    lambdas[n] = 1.0;
    schumacher_sections(cli, report, &code, &lambdas)?;

    let confidence = schumacher_confidence(&code, &eigs, &ensemble)?;
    report.kv(
        "confidence",
        &[
            ("fbar", fmt(confidence.fbar)),
            ("bound", fmt(confidence.bound)),
            ("P_T", fmt(confidence.p_t)),
            ("p_err", fmt(1.0 - confidence.fbar)),
        ],
    );
    if confidence.fbar < confidence.bound - cli.tolerance {
        bail!("Schumacher confidence fell below the 2 P_T - 1 bound");
    }
    Ok(())
}

fn cmd_schumacher_grand(cli: &Cli, config: &Config, report: &mut Report) -> Result<()> {
    let (eigs, _) = spectrum_and_ensemble(cli, config)?;
    let lambdas = config.lambdas()?;
    let code = generalized_schumacher(&lambdas, &eigs, config.delta()?, config.code_dim(), cli.lmax)?;
    schumacher_sections(cli, report, &code, &lambdas)?;

    // Cross-check the closed-form audit against direct measurement.
    let rho = manyletter::matrix::diagonal_letter_matrix(&eigs);
    let sigma = MessageMatrix::grand_canonical(&lambdas, &rho, cli.lmax)?;
    let audit = schumacher_audit(&code, &lambdas)?;
    let (physical, discarded) = measured_encoded_information(&code, &sigma)?;
    report.kv(
        "measured information",
        &[
            ("encoded_physical", fmt(physical)),
            ("encoded_junk_discarded", fmt(discarded)),
        ],
    );
    if (audit.encoded_physical - physical).abs() > cli.tolerance
        || (audit.encoded_discarded - discarded).abs() > cli.tolerance
    {
        bail!("closed-form and measured encoded information disagree");
    }
    Ok(())
}

fn cmd_lossless_grand(cli: &Cli, config: &Config, report: &mut Report) -> Result<()> {
    let (eigs, _) = spectrum_and_ensemble(cli, config)?;
    let lambdas = config.lambdas()?;
    let code = build_symbol_code(&eigs, cli.mode.into())?;

    let rows = report.section("letter codebook");
    rows.push(vec!["letter".into(), "probability".into(), "codeword".into(), "length".into()]);
    for (i, &q) in eigs.iter().enumerate() {
        let word = code
            .codewords
            .as_ref()
            .map(|ws| string_of(&ws[i]))
            .unwrap_or_else(|| "-".into());
        rows.push(vec![i.to_string(), fmt(q), word, fmt(code.lengths[i])]);
    }

    let r = compress_grand_canonical(&code, &lambdas)?;
    report.kv(
        "compression report",
        &[
            ("raw", fmt(r.raw)),
            ("encoded", fmt(r.encoded)),
            ("sector_weighted_entropy", fmt(r.sector_weighted_entropy)),
            ("entropy_sigma", fmt(r.entropy)),
            ("length_entropy", fmt(r.length_entropy)),
        ],
    );
    if cli.mode == Mode::Integer {
        let channel = code.channel(cli.lmax)?;
        check_channel(cli, report, "symbol encoder", &channel)?;
        if r.encoded < r.sector_weighted_entropy - cli.tolerance {
            bail!("encoded information fell below the entropy floor");
        }
    } else if (r.encoded - r.sector_weighted_entropy).abs() > cli.tolerance {
        bail!("ideal-mode encoded information does not match the entropy identity");
    }
    Ok(())
}

/// Message matrix from a config: grand canonical when `lambdas` is
/// present, else canonical at power `n` (default 1).
fn sigma_from_config(cli: &Cli, config: &Config) -> Result<MessageMatrix> {
    let (eigs, _) = spectrum_and_ensemble(cli, config)?;
    let rho = manyletter::matrix::diagonal_letter_matrix(&eigs);
    match &config.lambdas {
        Some(lambdas) => Ok(MessageMatrix::grand_canonical(lambdas, &rho, cli.lmax)?),
        None => Ok(MessageMatrix::canonical(&rho, config.n.unwrap_or(1))?),
    }
}

fn cmd_lossless_general(cli: &Cli, config: &Config, report: &mut Report) -> Result<()> {
    let sigma = sigma_from_config(cli, config)?;
    let code = build_general_code(&sigma, cli.mode.into())?;

    let rows = report.section("eigen-codebook");
    rows.push(vec!["eigenvalue".into(), "codeword".into(), "length".into()]);
    for (i, &q) in code.spectrum.iter().enumerate() {
        let word = code
            .codewords
            .as_ref()
            .map(|ws| string_of(&ws[i]))
            .unwrap_or_else(|| "-".into());
        rows.push(vec![fmt(q), word, fmt(code.lengths[i])]);
    }

    let r = encoded_information_general(&code);
    report.kv(
        "compression report",
        &[
            ("encoded", fmt(r.encoded)),
            ("encoded_physical", fmt(r.encoded_physical)),
            ("entropy_sigma", fmt(r.entropy)),
            ("complement_rate", code.translator.m.to_string()),
        ],
    );
    match cli.mode {
        Mode::Ideal => {
            if (r.encoded - r.entropy).abs() > cli.tolerance {
                bail!("ideal-mode I_c does not equal S(sigma)");
            }
        }
        Mode::Integer => {
            if !(r.encoded >= r.entropy - cli.tolerance && r.encoded < r.entropy + 1.0) {
                bail!("integer-mode I_c violates the entropy sandwich");
            }
            let channel = code.channel(cli.lmax)?;
            check_channel(cli, report, "general encoder", &channel)?;
        }
    }
    Ok(())
}

fn cmd_core_info(cli: &Cli, config: &Config, report: &mut Report) -> Result<()> {
    let sigma = sigma_from_config(cli, config)?;
    let obs = CoreInformationObservable::from_matrix(&sigma)?;

    let rows = report.section("spectral part");
    rows.push(vec!["eigenvalue".into(), "core_information".into()]);
    for &q in &obs.spectrum {
        rows.push(vec![fmt(q), fmt(-q.log2())]);
    }

    let i0 = obs.expectation(&sigma)?;
    let s = sigma.von_neumann_entropy();
    report.kv(
        "summary",
        &[("core_information_sigma", fmt(i0)), ("entropy_sigma", fmt(s))],
    );
    if (i0 - s).abs() > cli.tolerance {
        bail!("I0(sigma) does not equal S(sigma)");
    }
    Ok(())
}

fn cmd_audit_channel(cli: &Cli, config: &Config, report: &mut Report) -> Result<()> {
    let kind = config
        .channel
        .as_deref()
        .context("config needs `channel` (translate | schumacher | schumacher-grand | symbol | general)")?;
    match kind {
        "translate" => {
            let source_dim = config
                .source_dim
                .or(config.probs.as_ref().map(|p| p.len()))
                .context("config needs `source_dim` or `probs`")?;
            let block = config.n.unwrap_or(1);
            let t = BlockTranslator::new(source_dim, config.code_dim(), block)?;
            let ch = t.message_translator(cli.lmax - cli.lmax % block)?;
            check_channel(cli, report, "translator", &ch)
        }
        "schumacher" => {
            let (eigs, _) = spectrum_and_ensemble(cli, config)?;
            let code = build_schumacher(
                &eigs,
                config.n()?,
                config.delta()?,
                config.code_dim(),
                JunkTarget::EmptyMessage,
            )?;
            check_channel(cli, report, "encoder", &code.pair.encoder)?;
            check_channel(cli, report, "decoder", &code.pair.decoder)
        }
        "schumacher-grand" => {
            let (eigs, _) = spectrum_and_ensemble(cli, config)?;
            let code = generalized_schumacher(
                &config.lambdas()?,
                &eigs,
                config.delta()?,
                config.code_dim(),
                cli.lmax,
            )?;
            check_channel(cli, report, "encoder", &code.pair.encoder)?;
            check_channel(cli, report, "decoder", &code.pair.decoder)
        }
        "symbol" => {
            let (eigs, _) = spectrum_and_ensemble(cli, config)?;
            let code = build_symbol_code(&eigs, LengthMode::Integer)?;
            check_channel(cli, report, "symbol encoder", &code.channel(cli.lmax)?)
        }
        "general" => {
            let sigma = sigma_from_config(cli, config)?;
            let code = build_general_code(&sigma, LengthMode::Integer)?;
            check_channel(cli, report, "general encoder", &code.channel(cli.lmax)?)
        }
        other => bail!("unknown channel kind {other:?}"),
    }
}
