use std::fs;
use std::path::Path;

use pureres::builders::{left_truncations, resolve_generic_forms, HdSchedule};
use pureres::cohomology::{cohomology_table, default_twist_window};
use pureres::complex::PresentationJson;
use pureres::drivers::{
    explore, verify_anyhd_built, verify_gorenstein_built, verify_koszul_built,
    verify_quiver_dictionary, RunOptions, TheoremReport,
};
use pureres::homext::ext_dims;
use pureres::kronecker::{is_schur_root, rep_hom_ext, simplicity_verdict, tits_form, RepJson};
use pureres::verdict::{combine, render_table};
use pureres::{Field, PolyRing, Presentation, PrimeField, Rationals, Status};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{
    AnyHdArgs, Cli, Command, Config, DimsArgs, ExploreArgs, QuiverCommand, VerifyCommand,
};
use crate::error::CliError;

/// A command's result in every supported format.
#[derive(Clone, Debug)]
pub struct Rendered {
    pub command: &'static str,
    pub result: Value,
    pub text: String,
    /// Only table-like results have a TSV form; others fall back to text.
    pub tsv: Option<String>,
    /// False when a verification did not pass.
    pub success: bool,
}

impl Rendered {
    fn new(command: &'static str, result: impl Serialize, text: String) -> Result<Self, CliError> {
        Ok(Self {
            command,
            result: serde_json::to_value(result)?,
            text,
            tsv: None,
            success: true,
        })
    }

    /// `{"command", "config", "result"}`, pretty printed.
    pub fn to_json(&self, config: &Config) -> String {
        let envelope = json!({"command": self.command, "config": config, "result": self.result});
        serde_json::to_string_pretty(&envelope).expect("JSON values serialize")
    }
}

/// Parameters for `verify all`.
pub const VERIFY_ALL_KOSZUL: [(usize, u32); 3] = [(2, 1), (3, 1), (3, 2)];
pub const VERIFY_ALL_GORENSTEIN: [(usize, usize); 1] = [(3, 1)];
pub const VERIFY_ALL_ANYHD: [usize; 3] = [1, 2, 3];
pub const VERIFY_ALL_QUIVER_SAMPLES: usize = 100;

pub fn execute(cli: &Cli) -> Result<Rendered, CliError> {
    match cli.config.prime {
        0 => run(&Rationals, cli),
        p => run(&PrimeField::new(p)?, cli),
    }
}

fn options(config: &Config) -> RunOptions {
    RunOptions {
        seed: config.seed,
        sample_points: config.sample_points,
        slack: config.slack,
    }
}

fn run<F: Field>(field: &F, cli: &Cli) -> Result<Rendered, CliError> {
    let config = &cli.config;
    let opts = options(config);
    match &cli.command {
        Command::Koszul { n, d } => koszul(field, *n, *d, &opts),
        Command::Gorenstein { n, t } => gorenstein(field, *n, *t, &opts),
        Command::Anyhd(args) => anyhd(field, args, &opts),
        Command::Cohomology { input, tmin, tmax } => {
            cohomology(field, input, *tmin, *tmax, config.slack)
        }
        Command::Hom { e, f, kmax } => hom(field, e, f, *kmax),
        Command::Quiver(q) => quiver(field, q),
        Command::Verify(v) => verify(field, v, &opts),
        Command::Explore(args) => explore_cmd(field, args, &opts),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load_presentation<F: Field>(field: &F, path: &Path) -> Result<Presentation<F>, CliError> {
    let json = PresentationJson::parse(&read(path)?)?;
    let ring = PolyRing::new(json.ring.n, field.clone())?;
    Ok(json.to_presentation(&ring)?)
}

fn report_text(report: &TheoremReport) -> String {
    format!(
        "{}\n{}\nstatus: {}  seeds: {:?}\n",
        report.theorem,
        render_table(&report.verdicts),
        report.status,
        report.seeds
    )
}

fn built_output<F: Field>(
    command: &'static str,
    p: &Presentation<F>,
    syzygies: &[Presentation<F>],
    report: &TheoremReport,
) -> Result<Rendered, CliError> {
    let betti = p.betti().to_string();
    let result = json!({
        "presentation": p.to_json(),
        "betti": betti,
        "syzygies": syzygies.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
        "report": report,
    });
    let text = format!("{}\n{betti}\n{}", p.label(), report_text(report));
    let mut out = Rendered::new(command, result, text)?;
    out.success = report.passed();
    Ok(out)
}

fn koszul<F: Field>(field: &F, n: usize, d: u32, opts: &RunOptions) -> Result<Rendered, CliError> {
    let (report, res) = verify_koszul_built(field, n, d, opts)?;
    let p = Presentation::from_complex(res.complex.clone(), format!("koszul(n={n}, d={d})"))?;
    built_output("koszul", &p, &res.syzygies, &report)
}

fn gorenstein<F: Field>(
    field: &F,
    n: usize,
    t: usize,
    opts: &RunOptions,
) -> Result<Rendered, CliError> {
    let (report, p) = verify_gorenstein_built(field, n, t, opts)?;
    let syz = left_truncations(&p, n - 1, "F")?;
    built_output("gorenstein", &p, &syz, &report)
}

fn schedule(args: &AnyHdArgs) -> Result<Option<HdSchedule>, CliError> {
    args.schedule
        .as_ref()
        .map(|ds| HdSchedule::new(args.n, args.l, args.d0, ds.clone()))
        .transpose()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn anyhd<F: Field>(field: &F, args: &AnyHdArgs, opts: &RunOptions) -> Result<Rendered, CliError> {
    let sched = schedule(args)?;
    let (report, build) = verify_anyhd_built(field, args.n, args.l, args.d0, sched.as_ref(), opts)?;
    let earlier: Vec<_> = build.bundles[..build.bundles.len() - 1].to_vec();
    built_output("anyhd", build.last(), &earlier, &report)
}

fn cohomology<F: Field>(
    field: &F,
    input: &Path,
    tmin: Option<i64>,
    tmax: Option<i64>,
    slack: i64,
) -> Result<Rendered, CliError> {
    let p = load_presentation(field, input)?;
    let default = default_twist_window(&p, slack);
    let (lo, hi) = (
        tmin.unwrap_or(*default.start()),
        tmax.unwrap_or(*default.end()),
    );
    if lo > hi {
        return Err(CliError::Usage(format!("empty twist window {lo}..{hi}")));
    }
    let table = cohomology_table(&p, lo..=hi);
    let mut out = Rendered::new("cohomology", &table, table.to_string())?;
    out.tsv = Some(table.to_tsv());
    Ok(out)
}

fn hom<F: Field>(field: &F, e: &Path, f: &Path, kmax: Option<usize>) -> Result<Rendered, CliError> {
    let (pe, pf) = (load_presentation(field, e)?, load_presentation(field, f)?);
    if pe.n() != pf.n() {
        return Err(CliError::Usage(format!(
            "E lives on P^{} but F on P^{}",
            pe.n(),
            pf.n()
        )));
    }
    let kmax = kmax.unwrap_or(pe.n());
    let dims = ext_dims(&pe, &pf, kmax)?;
    let text = dims
        .iter()
        .enumerate()
        .map(|(k, d)| format!("ext^{k}\t{d}\n"))
        .collect::<String>();
    let result = json!({"e": pe.label(), "f": pf.label(), "ext": dims});
    let mut out = Rendered::new("hom", result, text.clone())?;
    out.tsv = Some(text);
    Ok(out)
}

fn quiver<F: Field>(field: &F, q: &QuiverCommand) -> Result<Rendered, CliError> {
    let scalar = |command, value: Value| -> Result<Rendered, CliError> {
        let text = match &value {
            Value::String(s) => format!("{s}\n"),
            v => format!("{v}\n"),
        };
        let mut out = Rendered::new(command, &value, text.clone())?;
        out.tsv = Some(text);
        Ok(out)
    };
    match q {
        QuiverCommand::Tits(DimsArgs { w, a, b }) => {
            scalar("quiver tits", json!(tits_form(*w, *a, *b)))
        }
        QuiverCommand::Schur(DimsArgs { w, a, b }) => {
            scalar("quiver schur", json!(is_schur_root(*w, *a, *b)?))
        }
        QuiverCommand::Verdict(DimsArgs { w, a, b }) => scalar(
            "quiver verdict",
            serde_json::to_value(simplicity_verdict(*w, *a, *b)?)?,
        ),
        QuiverCommand::Homext { r1, r2 } => {
            let x = RepJson::parse(&read(r1)?)?.to_rep(field)?;
            let y = RepJson::parse(&read(r2)?)?.to_rep(field)?;
            let (h, e) = rep_hom_ext(&x, &y, field)?;
            let text = format!("hom\t{h}\next1\t{e}\n");
            let mut out =
                Rendered::new("quiver homext", json!({"hom": h, "ext1": e}), text.clone())?;
            out.tsv = Some(text);
            Ok(out)
        }
    }
}

/// Every report of `verify all`, in a fixed order.
pub fn verify_all<F: Field>(field: &F, opts: &RunOptions) -> Result<Vec<TheoremReport>, CliError> {
    let mut reports = Vec::new();
    for (n, d) in VERIFY_ALL_KOSZUL {
        reports.push(verify_koszul_built(field, n, d, opts)?.0);
    }
    for (n, t) in VERIFY_ALL_GORENSTEIN {
        reports.push(verify_gorenstein_built(field, n, t, opts)?.0);
    }
    for l in VERIFY_ALL_ANYHD {
        reports.push(verify_anyhd_built(field, 4, l, 1, None, opts)?.0);
    }
    reports.push(verify_quiver_dictionary(
        field,
        VERIFY_ALL_QUIVER_SAMPLES,
        opts,
    )?);
    Ok(reports)
}

fn verify<F: Field>(field: &F, v: &VerifyCommand, opts: &RunOptions) -> Result<Rendered, CliError> {
    let single = |report: TheoremReport| -> Result<Rendered, CliError> {
        let text = report_text(&report);
        let mut out = Rendered::new("verify", &report, text)?;
        out.success = report.passed();
        Ok(out)
    };
    match v {
        VerifyCommand::All => {
            let reports = verify_all(field, opts)?;
            let status = combine_reports(&reports);
            let text = reports
                .iter()
                .map(report_text)
                .collect::<Vec<_>>()
                .join("\n")
                + &format!("overall: {status}\n");
            let mut out = Rendered::new(
                "verify",
                json!({"reports": reports, "status": status}),
                text,
            )?;
            out.success = status == Status::Pass;
            Ok(out)
        }
        VerifyCommand::Anyhd(args) => {
            let sched = schedule(args)?;
            single(verify_anyhd_built(field, args.n, args.l, args.d0, sched.as_ref(), opts)?.0)
        }
        VerifyCommand::Koszul { n, d } => single(verify_koszul_built(field, *n, *d, opts)?.0),
        VerifyCommand::Gorenstein { n, t } => {
            single(verify_gorenstein_built(field, *n, *t, opts)?.0)
        }
        VerifyCommand::Quiver { samples } => {
            single(verify_quiver_dictionary(field, *samples, opts)?)
        }
    }
}

fn combine_reports(reports: &[TheoremReport]) -> Status {
    let all: Vec<_> = reports.iter().flat_map(|r| r.verdicts.clone()).collect();
    combine(&all)
}

fn explore_cmd<F: Field>(
    field: &F,
    args: &ExploreArgs,
    opts: &RunOptions,
) -> Result<Rendered, CliError> {
    let p = match (&args.input, args.n, args.degree, args.count) {
        (Some(path), ..) => load_presentation(field, path)?,
        (None, Some(n), Some(degree), Some(count)) => {
            let ring = PolyRing::new(n, field.clone())?;
            resolve_generic_forms(
                &ring,
                degree,
                count,
                &mut ChaCha8Rng::seed_from_u64(opts.seed),
            )?
        }
        _ => {
            return Err(CliError::Usage(
                "give --in FILE or all of --n, --degree, --count".into(),
            ))
        }
    };
    let report = explore(&p, opts.slack)?;
    let mut text = format!(
        "{}\npure: {}  exact: {}\n{}\n",
        report.label, report.pure, report.exact, report.betti
    );
    for row in &report.rows {
        let hd = row.hd.map_or("?".to_string(), |h| h.to_string());
        text.push_str(&format!(
            "F_{}\trank {}\thd {}\tdim Hom(F,F) {}\n",
            row.syzygy, row.rank, hd, row.hom_dim
        ));
    }
    let result = json!({"presentation": p.to_json(), "explore": report});
    Rendered::new("explore", result, text)
}
