//! The `levelratio` command line.
//!
//! Every numeric flag may also come from a TOML file given by `--config`,
//! with the same key names. Flags override the file, the file overrides
//! the built-in defaults, and unknown keys are rejected.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::analyze::{analyze_spectrum, AnalyzeOptions};
use crate::ensembles::{
    amplitude_scaling_curve, run_realizations, AmplitudeBaseline, EnsembleKind, Sampler,
    SweepConfig,
};
use crate::error::{Error, Result};
use crate::fit::fit_amplitude;
use crate::histogram::uniform_edges;
use crate::io::{
    format_sig, histogram_from_table, read_levels, read_table, write_table, LevelFile, LevelFormat,
    Table, TableFormat,
};
use crate::ising::{ising_ratio_stats, IsingParams};
use crate::sine_kernel::{exact_ratio_pdf, ExactGueConfig};
use crate::surmise::{integrated_means, theoretical_means, DysonIndex, RatioLaw};

#[derive(Debug, Parser)]
#[command(
    name = "levelratio",
    version,
    about = "Ratio-of-spacings statistics for spectra, random matrices and spin chains"
)]
struct Cli {
    /// TOML file with default values for any flag.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Surmise constants and means for Poisson, GOE, GUE and GSE.
    SurmiseTable(OutputArgs),
    /// Sample an ensemble and histogram its ratios.
    Sample(SampleArgs),
    /// Ratio statistics of a level file.
    Analyze(AnalyzeArgs),
    /// Exact large-N GUE ratio density from the sine kernel.
    ExactGue(ExactArgs),
    /// Ratio statistics of one momentum sector of the Ising chain.
    Ising(IsingArgs),
    /// Fit the correction amplitude to a histogram CSV.
    Fit(FitArgs),
    /// Correction amplitude against matrix size.
    Scaling(ScalingArgs),
}

#[derive(Debug, Args, Default)]
struct OutputArgs {
    /// Output file; standard output when absent.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// csv or txt.
    #[arg(long)]
    format: Option<TableFormat>,
}

#[derive(Debug, Args, Default)]
struct BinArgs {
    /// Number of bins of the r histogram.
    #[arg(long)]
    bins: Option<usize>,
    /// Upper edge of the r histogram.
    #[arg(long)]
    rmax: Option<f64>,
}

#[derive(Debug, Args)]
struct SampleArgs {
    /// poisson, goe, gue or gse.
    #[arg(long)]
    ensemble: Option<EnsembleKind>,
    /// Matrix size (number of levels for poisson).
    #[arg(long)]
    size: Option<usize>,
    #[arg(long)]
    realizations: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Central fraction of each spectrum kept.
    #[arg(long)]
    bulk: Option<f64>,
    /// dense or tridiagonal.
    #[arg(long)]
    sampler: Option<Sampler>,
    #[command(flatten)]
    bins: BinArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// Level file: one level per line, '#' comments.
    file: PathBuf,
    /// plain or zero-table.
    #[arg(long)]
    levels: Option<LevelFormat>,
    /// Levels dropped from the bottom after sorting.
    #[arg(long)]
    skip: Option<usize>,
    /// Levels kept after --skip.
    #[arg(long)]
    take: Option<usize>,
    #[arg(long)]
    bulk: Option<f64>,
    #[command(flatten)]
    bins: BinArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct ExactArgs {
    /// Largest half-width reached by the spacing integral.
    #[arg(long)]
    tmax: Option<f64>,
    /// Nyström order.
    #[arg(long)]
    order: Option<usize>,
    /// Number of r points on (0, rmax].
    #[arg(long)]
    ngrid: Option<usize>,
    /// Gauss-Legendre points of the spacing integral.
    #[arg(long)]
    nt: Option<usize>,
    #[arg(long)]
    rmax: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct IsingArgs {
    /// Chain length.
    #[arg(long = "L")]
    length: Option<usize>,
    /// Transverse field.
    #[arg(long)]
    lambda: Option<f64>,
    /// Longitudinal field.
    #[arg(long)]
    alpha: Option<f64>,
    /// Momentum index j of the sector 2πj/L.
    #[arg(long)]
    sector: Option<usize>,
    #[arg(long)]
    bulk: Option<f64>,
    #[command(flatten)]
    bins: BinArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct FitArgs {
    /// Histogram CSV with columns bin_lo,bin_hi,count,density.
    file: PathBuf,
    /// goe, gue or gse.
    #[arg(long)]
    ensemble: Option<EnsembleKind>,
}

#[derive(Debug, Args)]
struct ScalingArgs {
    #[arg(long)]
    ensemble: Option<EnsembleKind>,
    /// Comma-separated matrix sizes.
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    /// Realizations per size, unless --ratios is given.
    #[arg(long)]
    realizations: Option<u64>,
    /// Target number of ratios per size.
    #[arg(long)]
    ratios: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    bulk: Option<f64>,
    #[arg(long)]
    sampler: Option<Sampler>,
    /// surmise or large-n: what C_N is measured from.
    #[arg(long)]
    baseline: Option<String>,
    #[command(flatten)]
    output: OutputArgs,
}

/// Values read from `--config`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    ensemble: Option<String>,
    size: Option<usize>,
    realizations: Option<u64>,
    seed: Option<u64>,
    bulk: Option<f64>,
    bins: Option<usize>,
    rmax: Option<f64>,
    skip: Option<usize>,
    take: Option<usize>,
    levels: Option<String>,
    #[serde(rename = "L")]
    length: Option<usize>,
    lambda: Option<f64>,
    alpha: Option<f64>,
    sector: Option<usize>,
    tmax: Option<f64>,
    order: Option<usize>,
    ngrid: Option<usize>,
    nt: Option<usize>,
    out: Option<PathBuf>,
    format: Option<String>,
    sampler: Option<String>,
    sizes: Option<Vec<usize>>,
    ratios: Option<u64>,
    baseline: Option<String>,
}

fn load_config(path: Option<&Path>) -> Result<FileConfig> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

fn parsed<T: std::str::FromStr<Err = Error>>(v: Option<&String>) -> Result<Option<T>> {
    v.map(|s| s.parse()).transpose()
}

/// Where results go.
struct Sink<'a> {
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Sink<'_> {
    /// Writes `table` to `--out` (then `summary` to stdout), or to stdout
    /// (then `summary` to stderr) so that stdout stays plot-ready.
    fn emit(
        &mut self,
        table: &Table,
        format: TableFormat,
        out: Option<&Path>,
        summary: &str,
    ) -> Result<()> {
        let stdio = |e: std::io::Error| Error::Io {
            path: PathBuf::from("<stdout>"),
            source: e,
        };
        match out {
            Some(path) => {
                write_table(table, format, path)?;
                self.stdout.write_all(summary.as_bytes()).map_err(stdio)
            }
            None => {
                self.stdout
                    .write_all(table.render(format).as_bytes())
                    .map_err(stdio)?;
                self.stderr.write_all(summary.as_bytes()).map_err(stdio)
            }
        }
    }
}

fn output_settings(
    o: &OutputArgs,
    cfg: &FileConfig,
    default: TableFormat,
) -> Result<(TableFormat, Option<PathBuf>)> {
    let format = match o.format {
        Some(f) => f,
        None => parsed(cfg.format.as_ref())?.unwrap_or(default),
    };
    Ok((format, o.out.clone().or_else(|| cfg.out.clone())))
}

fn ratio_edges(b: &BinArgs, cfg: &FileConfig) -> Result<Vec<f64>> {
    let bins = b.bins.or(cfg.bins).unwrap_or(120);
    let rmax = b.rmax.or(cfg.rmax).unwrap_or(6.0);
    uniform_edges(0.0, rmax, bins)
}

fn fmt_mean(m: &crate::stats::MeanEstimate) -> String {
    format!("{} ± {}", format_sig(m.mean, 6), format_sig(m.stderr, 2))
}

fn surmise_table(args: &OutputArgs, cfg: &FileConfig, sink: &mut Sink) -> Result<()> {
    let mut table = Table::new(&[
        "beta",
        "Z",
        "c",
        "C",
        "mean_r_W",
        "mean_rt_W",
        "mean_r_fit",
        "mean_rt_fit",
        "mean_r_fit_law",
        "mean_rt_fit_law",
    ]);
    let poisson = theoretical_means(EnsembleKind::Poisson);
    table.push(vec![
        0.0,
        1.0,
        f64::NAN,
        0.0,
        poisson.ratio_surmise.value(),
        poisson.folded_surmise,
        f64::INFINITY,
        poisson.folded_surmise,
        f64::INFINITY,
        poisson.folded_surmise,
    ]);
    for beta in DysonIndex::ALL {
        let k = beta.constants();
        let (law_r, law_rt) = integrated_means(&RatioLaw::reference_fit(beta))?;
        table.push(vec![
            beta.as_f64(),
            k.z,
            k.c,
            k.amplitude,
            k.mean_ratio_surmise,
            k.mean_folded_surmise,
            k.mean_ratio_fit,
            k.mean_folded_fit,
            law_r.value(),
            law_rt,
        ]);
    }
    let (format, out) = output_settings(args, cfg, TableFormat::Txt)?;
    let summary = "# mean_*_fit: reference large-N numerics; mean_*_fit_law: integrated from the fitted law\n";
    sink.emit(&table, format, out.as_deref(), summary)
}

fn sample(args: &SampleArgs, cfg: &FileConfig, sink: &mut Sink) -> Result<()> {
    let kind = match args.ensemble {
        Some(k) => k,
        None => parsed(cfg.ensemble.as_ref())?.unwrap_or(EnsembleKind::Gue),
    };
    let sampler = match args.sampler {
        Some(s) => s,
        None => parsed(cfg.sampler.as_ref())?.unwrap_or_default(),
    };
    let mut config = SweepConfig::new(kind).sampler(sampler);
    config.size = args.size.or(cfg.size).unwrap_or(config.size);
    config.realizations = args
        .realizations
        .or(cfg.realizations)
        .unwrap_or(config.realizations);
    config.seed = args.seed.or(cfg.seed).unwrap_or(config.seed);
    config.bulk_fraction = args.bulk.or(cfg.bulk).unwrap_or(config.bulk_fraction);
    config.ratio_edges = ratio_edges(&args.bins, cfg)?;
    let result = run_realizations(&config)?;
    let mut summary = format!(
        "# {kind} N={} realizations={} seed={} bulk={}\n",
        config.size, config.realizations, config.seed, config.bulk_fraction
    );
    if let Some(m) = &result.mean_folded {
        summary += &format!("# <r~> = {} ({} ratios)\n", fmt_mean(m), m.count);
    }
    if let Some(m) = &result.mean_ratio {
        summary += &format!("# <r> = {} (heavy-tailed; prefer <r~>)\n", fmt_mean(m));
    }
    if let Some(fit) = &result.amplitude {
        summary += &format!(
            "# C = {} ± {}\n",
            format_sig(fit.amplitude, 6),
            format_sig(fit.stderr, 2)
        );
    }
    if result.skipped_zero_spacings > 0 {
        summary += &format!(
            "# warning: {} ratios skipped at zero spacings\n",
            result.skipped_zero_spacings
        );
    }
    let (format, out) = output_settings(&args.output, cfg, TableFormat::Csv)?;
    sink.emit(
        &Table::from_histogram(&result.ratio_histogram),
        format,
        out.as_deref(),
        &summary,
    )
}

fn analyze(args: &AnalyzeArgs, cfg: &FileConfig, sink: &mut Sink) -> Result<()> {
    let mut file = LevelFile::new(&args.file);
    file.format = match args.levels {
        Some(f) => f,
        None => parsed(cfg.levels.as_ref())?.unwrap_or_default(),
    };
    file.skip = args.skip.or(cfg.skip).unwrap_or(0);
    file.take = args.take.or(cfg.take);
    let loaded = read_levels(&file)?;
    let options = AnalyzeOptions {
        bulk_fraction: args.bulk.or(cfg.bulk).unwrap_or(1.0),
        ratio_edges: ratio_edges(&args.bins, cfg)?,
        ..AnalyzeOptions::default()
    };
    let report = analyze_spectrum(&loaded.spectrum, &options)?;
    let mut summary = String::new();
    if loaded.reordered {
        summary += "# warning: levels were not sorted; sorted before analysis\n";
    }
    summary += &format!("# levels {}\n", report.levels);
    summary += &format!("# <r~> = {}\n", fmt_mean(&report.mean_folded));
    summary += &format!(
        "# <r> = {} (heavy-tailed; prefer <r~>)\n",
        fmt_mean(&report.mean_ratio)
    );
    for (law, d) in &report.ks {
        summary += &format!("# KS {} = {}\n", law.name(), format_sig(*d, 4));
    }
    summary += &format!("# best law: {}\n", report.best_law().name());
    if report.degenerate {
        summary +=
            "# warning: all ratios are equal; the spectrum is degenerate for this analysis\n";
    }
    if report.skipped_zero_spacings > 0 {
        summary += &format!(
            "# warning: {} ratios skipped at zero spacings\n",
            report.skipped_zero_spacings
        );
    }
    let (format, out) = output_settings(&args.output, cfg, TableFormat::Csv)?;
    sink.emit(
        &Table::from_histogram(&report.ratio_histogram),
        format,
        out.as_deref(),
        &summary,
    )
}

fn exact_gue(args: &ExactArgs, cfg: &FileConfig, sink: &mut Sink) -> Result<()> {
    let defaults = ExactGueConfig::default();
    let config = ExactGueConfig {
        t_max: args.tmax.or(cfg.tmax).unwrap_or(defaults.t_max),
        n_t: args.nt.or(cfg.nt).unwrap_or(defaults.n_t),
        order: args.order.or(cfg.order).unwrap_or(defaults.order),
    };
    let n = args.ngrid.or(cfg.ngrid).unwrap_or(100);
    let rmax = args.rmax.or(cfg.rmax).unwrap_or(5.0);
    if n == 0 || !(rmax > 0.0) {
        return Err(Error::InvalidArgument(
            "need --ngrid > 0 and --rmax > 0".into(),
        ));
    }
    let grid: Vec<f64> = (1..=n).map(|i| rmax * i as f64 / n as f64).collect();
    let result = exact_ratio_pdf(&grid, &config)?;
    let mut table = Table::new(&["r", "P(r)"]);
    for (&r, &p) in result.r.iter().zip(&result.density) {
        table.push(vec![r, p]);
    }
    let mut summary = format!(
        "# t_max={} order={} n_t={}; unnormalized integral {}\n",
        config.t_max,
        config.order,
        config.n_t,
        format_sig(result.raw_norm, 9)
    );
    if result.clipped > 0 {
        summary += &format!(
            "# {} tiny negative densities clipped to zero\n",
            result.clipped
        );
    }
    let (format, out) = output_settings(&args.output, cfg, TableFormat::Txt)?;
    sink.emit(&table, format, out.as_deref(), &summary)
}

fn ising(args: &IsingArgs, cfg: &FileConfig, sink: &mut Sink) -> Result<()> {
    let params = IsingParams::new(
        args.length.or(cfg.length).unwrap_or(14),
        args.lambda.or(cfg.lambda).unwrap_or(0.5),
        args.alpha.or(cfg.alpha).unwrap_or(0.5),
    )?;
    let sector = args.sector.or(cfg.sector).unwrap_or(3);
    let bulk = args.bulk.or(cfg.bulk).unwrap_or(crate::ising::DEFAULT_BULK);
    let mut stats = ising_ratio_stats(&params, sector, bulk)?;
    if args.bins.bins.or(cfg.bins).is_some() || args.bins.rmax.or(cfg.rmax).is_some() {
        let edges = ratio_edges(&args.bins, cfg)?;
        let spectrum = crate::ising::sector_spectrum(&params, sector)?;
        let ratios =
            crate::spectrum::ratio_series(&crate::spectrum::bulk_select(&spectrum, bulk)?)?;
        stats.ratio_histogram = crate::histogram::Histogram::from_values(&ratios.values, edges)?;
    }
    let mut summary = format!(
        "# L={} lambda={} alpha={} sector j={} dim={} levels used={}\n",
        params.length, params.lambda, params.alpha, sector, stats.sector_dim, stats.levels_used
    );
    summary += &format!("# <r~> = {}\n", fmt_mean(&stats.mean_folded));
    summary += &format!("# KS GOE = {}\n", format_sig(stats.ks_goe, 4));
    for w in &stats.warnings {
        summary += &format!("# warning: {w}\n");
    }
    let (format, out) = output_settings(&args.output, cfg, TableFormat::Csv)?;
    sink.emit(
        &Table::from_histogram(&stats.ratio_histogram),
        format,
        out.as_deref(),
        &summary,
    )
}

fn fit(args: &FitArgs, cfg: &FileConfig, sink: &mut Sink) -> Result<()> {
    let kind = match args.ensemble {
        Some(k) => k,
        None => parsed(cfg.ensemble.as_ref())?.unwrap_or(EnsembleKind::Gue),
    };
    let beta = kind
        .dyson()
        .ok_or_else(|| Error::InvalidArgument("fit needs --ensemble goe, gue or gse".into()))?;
    let hist = histogram_from_table(&read_table(&args.file)?)?;
    let f = fit_amplitude(&hist, beta)?;
    writeln!(
        sink.stdout,
        "C = {} ± {}  (residual {}, {} bins; reference {})",
        format_sig(f.amplitude, 6),
        format_sig(f.stderr, 2),
        format_sig(f.residual_norm, 3),
        f.bins_used,
        beta.constants().amplitude
    )
    .map_err(|e| Error::Io {
        path: "<stdout>".into(),
        source: e,
    })
}

fn scaling(args: &ScalingArgs, cfg: &FileConfig, sink: &mut Sink) -> Result<()> {
    let kind = match args.ensemble {
        Some(k) => k,
        None => parsed(cfg.ensemble.as_ref())?.unwrap_or(EnsembleKind::Gue),
    };
    let sampler = match args.sampler {
        Some(s) => s,
        None => parsed(cfg.sampler.as_ref())?.unwrap_or(Sampler::Tridiagonal),
    };
    let baseline = match args
        .baseline
        .as_ref()
        .or(cfg.baseline.as_ref())
        .map(String::as_str)
    {
        None | Some("large-n") => AmplitudeBaseline::LargeN,
        Some("surmise") => AmplitudeBaseline::Surmise,
        Some(other) => {
            return Err(Error::InvalidArgument(format!(
                "unknown baseline {other:?} (surmise, large-n)"
            )))
        }
    };
    let sizes = args
        .sizes
        .clone()
        .or_else(|| cfg.sizes.clone())
        .unwrap_or_else(|| vec![10, 20, 40, 80]);
    let bulk = args.bulk.or(cfg.bulk).unwrap_or(1.0);
    let base = SweepConfig::new(kind)
        .sampler(sampler)
        .bulk(bulk)
        .seed(args.seed.or(cfg.seed).unwrap_or(0));
    let ratios = args.ratios.or(cfg.ratios);
    let realizations = args.realizations.or(cfg.realizations).unwrap_or(2000);
    let per_size = |n: usize| match ratios {
        Some(r) => {
            let per = ((n as f64 * bulk).ceil() as u64).saturating_sub(2).max(1);
            r.div_ceil(per)
        }
        None => realizations,
    };
    let curve = amplitude_scaling_curve(&base, &sizes, per_size, baseline)?;
    let mut table = Table::new(&["N", "C_N", "stderr", "N_C_N", "ratios"]);
    for p in &curve.points {
        table.push(vec![
            p.size as f64,
            p.amplitude,
            p.stderr,
            p.size as f64 * p.amplitude,
            p.ratios as f64,
        ]);
    }
    let summary = match curve.log_slope {
        Some(s) => format!(
            "# {kind} {baseline:?}: slope of log|C_N| vs log N = {}\n",
            format_sig(s, 4)
        ),
        None => format!("# {kind} {baseline:?}\n"),
    };
    let (format, out) = output_settings(&args.output, cfg, TableFormat::Csv)?;
    sink.emit(&table, format, out.as_deref(), &summary)
}

/// Parses `args` (program name first) and runs the subcommand. Returns the
/// process exit code: 0 on success, 1 on a failed run, 2 on a usage error.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let target: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = target.write_all(text.as_bytes());
            return code;
        }
    };
    let mut sink = Sink { stdout, stderr };
    let result = load_config(cli.config.as_deref()).and_then(|cfg| match &cli.command {
        Command::SurmiseTable(a) => surmise_table(a, &cfg, &mut sink),
        Command::Sample(a) => sample(a, &cfg, &mut sink),
        Command::Analyze(a) => analyze(a, &cfg, &mut sink),
        Command::ExactGue(a) => exact_gue(a, &cfg, &mut sink),
        Command::Ising(a) => ising(a, &cfg, &mut sink),
        Command::Fit(a) => fit(a, &cfg, &mut sink),
        Command::Scaling(a) => scaling(a, &cfg, &mut sink),
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(sink.stderr, "error: {e}");
            1
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("levelratio").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&[]).0, 2);
        assert_eq!(call(&["sample", "--bogus"]).0, 2);
        assert_eq!(call(&["sample", "--ensemble", "xyz"]).0, 2);
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("surmise-table"));
    }

    #[test]
    fn surmise_table_lists_constants() {
        let (code, out, _) = call(&["surmise-table"]);
        assert_eq!(code, 0);
        assert!(out.contains("1.75"));
        assert!(out.starts_with("# beta Z c C"));
    }

    #[test]
    fn config_file_and_precedence() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("run.toml");
        fs::write(
            &cfg,
            "ensemble = \"poisson\"\nsize = 50\nrealizations = 3\nbins = 10\n",
        )
        .unwrap();
        let c = cfg.to_str().unwrap();
        let (code, out, err) = call(&["sample", "--config", c]);
        assert_eq!(code, 0, "{err}");
        assert!(err.contains("poisson N=50 realizations=3"));
        assert_eq!(out.lines().count(), 11);
        let (_, _, err) = call(&["sample", "--config", c, "--size", "20"]);
        assert!(err.contains("N=20"));
        fs::write(&cfg, "sizee = 3\n").unwrap();
        let (code, _, err) = call(&["sample", "--config", c]);
        assert_eq!(code, 1);
        assert!(err.contains("sizee"));
    }

    #[test]
    fn runtime_errors_exit_1() {
        let (code, _, err) = call(&["analyze", "/nonexistent/levels.txt"]);
        assert_eq!(code, 1);
        assert_eq!(err.lines().count(), 1);
    }
}
