//! Thin command-line front end: reads surface documents, runs the library,
//! writes JSON (canonical form) or SVG. Exit codes: 0 success / verification
//! pass, 1 verification counterexample, 2 usage or input error.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use lcy::doc::{canonical_json, emit_fibration_doc, parse_surface, CertificateDoc};
use lcy::fibration::{
    build_standard, nontoric_destab_pipeline, stabilize_corner, stabilize_naive, total_monodromy,
};
use lcy::model::{classify_nontoric_blowdown, corner_blowup_model, ToricModel};
use lcy::{bridge, corpus, emit, fan, picard};

#[derive(Parser)]
#[command(name = "lcy", version, about = "Mirror Lefschetz fibrations of log Calabi-Yau surfaces")]
struct Cli {
    /// Input surface document (default: stdin).
    #[arg(long = "in", global = true, value_name = "PATH")]
    input: Option<PathBuf>,
    /// Output path (default: stdout).
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compile the surface into its mirror fibration document.
    Build,
    /// Verify a theorem on the input model (or on a random corpus).
    Verify {
        #[arg(value_enum)]
        check: Check,
        /// Run on N seeded random models instead of the input document.
        #[arg(long, value_name = "N")]
        corpus: Option<usize>,
    },
    /// Classify the model under non-toric blow-downs.
    Classify,
    /// Run the destabilisation pipeline for an eligible model.
    Destab,
    /// Reduce the fan to its minimal model.
    Mmp,
    /// Cohomology of a toric boundary divisor sum(a_i D_i): prints "h0 h1 h2".
    Cohomology {
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        divisor: Vec<i64>,
    },
    /// Emit the almost-toric base, handlebody datum, or an SVG picture.
    Emit {
        #[arg(value_enum)]
        what: EmitKind,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Monodromy,
    Bridge,
    Elemtrans,
    Stab,
    Torus,
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitKind {
    Base,
    Handlebody,
    Svg,
}

fn read_input(path: &Option<PathBuf>) -> Result<String> {
    match path {
        Some(p) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
            Ok(s)
        }
    }
}

fn write_output(path: &Option<PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_model(path: &Option<PathBuf>) -> Result<ToricModel> {
    let text = read_input(path)?;
    parse_surface(&text).map_err(|e| anyhow!("{e}"))
}

// ---------------------------------------------------------------------------
// Verification checks (one model at a time)
// ---------------------------------------------------------------------------

fn check_monodromy(model: &ToricModel) -> CertificateDoc {
    let cert = bridge::verify_monodromy_theorem(model);
    let pass = cert.status.is_pass();
    let counterexample = match &cert.status {
        bridge::CertStatus::Pass => None,
        bridge::CertStatus::Counterexample(s) => Some(s.clone()),
    };
    CertificateDoc::new("monodromy", pass, counterexample, &cert)
}

/// Restriction intertwines tensoring by a line bundle with the meridional
/// shift, and the Euler pairings agree on off-diagonal standard pairs.
fn check_bridge(model: &ToricModel) -> Result<CertificateDoc> {
    let coll = picard::standard_collection(model);
    let bundles = [picard::dtilde(model, 0), picard::canonical_class(model)];
    for l in &bundles {
        let dl = bridge::restrict_class(&picard::line_bundle(l), model).map_err(|e| anyhow!("{e}"))?;
        for (i, x) in coll.classes.iter().enumerate() {
            let rx = bridge::restrict_class(x, model).map_err(|e| anyhow!("{e}"))?;
            let twisted = picard::tensor(x, l).map_err(|e| anyhow!("{e}"))?;
            let got = bridge::restrict_class(&twisted, model).map_err(|e| anyhow!("{e}"))?;
            let want: Vec<i64> = rx.d.iter().zip(&dl.d).map(|(a, b)| a + rx.r * b).collect();
            if got.r != rx.r || got.d != want {
                return Ok(CertificateDoc::new(
                    "bridge",
                    false,
                    Some(format!("tensor compatibility fails at entry {i}")),
                    &(got, rx),
                ));
            }
        }
    }
    for i in 0..coll.classes.len() {
        for j in i + 1..coll.classes.len() {
            let ok = bridge::euler_pairings_agree(model, &coll.classes[i], &coll.classes[j])
                .map_err(|e| anyhow!("{e}"))?;
            if !ok {
                return Ok(CertificateDoc::new(
                    "bridge",
                    false,
                    Some(format!("Euler pairings disagree on pair ({i}, {j})")),
                    &(i, j),
                ));
            }
        }
    }
    Ok(CertificateDoc::new("bridge", true, None, &"tensor + Euler pairing compatibility"))
}

fn eligible_ray(model: &ToricModel) -> Option<usize> {
    (0..model.k()).find(|&i| {
        model.m()[i] > 0 && model.fan().position(fan::neg(model.fan().ray(i))).is_some()
    })
}

fn check_elemtrans(model: &ToricModel, i: usize) -> CertificateDoc {
    match lcy::fibration::elem_trans_script(&build_standard(model), model, i) {
        Ok((f, script)) => {
            CertificateDoc::new("elemtrans", true, None, &(emit_fibration_doc(&f), script))
        }
        Err(e) => CertificateDoc::new("elemtrans", false, Some(e.to_string()), &i),
    }
}

fn check_stab(model: &ToricModel) -> CertificateDoc {
    let std = build_standard(model);
    for i in 0..model.k() {
        let blown = build_standard(&corner_blowup_model(model, i));
        if stabilize_corner(&std, model, i).as_ref() != Ok(&blown) {
            return CertificateDoc::new(
                "stab",
                false,
                Some(format!("stabilize_corner mismatch at corner {i}")),
                &i,
            );
        }
        let naive = match stabilize_naive(&std, i + 1) {
            Ok(f) => f,
            Err(e) => return CertificateDoc::new("stab", false, Some(e.to_string()), &i),
        };
        if total_monodromy(&naive) != total_monodromy(&blown) {
            return CertificateDoc::new(
                "stab",
                false,
                Some(format!("naive stabilisation monodromy mismatch at corner {i}")),
                &(total_monodromy(&naive), total_monodromy(&blown)),
            );
        }
    }
    CertificateDoc::new("stab", true, None, &model.k())
}

fn check_torus(model: &ToricModel) -> Result<CertificateDoc> {
    let toric = corpus::toric_part(model);
    let cert = bridge::torus_class_check(&toric).map_err(|e| anyhow!("{e}"))?;
    let pass = cert.status.is_pass();
    let counterexample = match &cert.status {
        bridge::CertStatus::Pass => None,
        bridge::CertStatus::Counterexample(s) => Some(s.clone()),
    };
    Ok(CertificateDoc::new("torus", pass, counterexample, &cert))
}

fn run_check(check: Check, model: &ToricModel) -> Result<CertificateDoc> {
    Ok(match check {
        Check::Monodromy => check_monodromy(model),
        Check::Bridge => check_bridge(model)?,
        Check::Elemtrans => {
            let i = eligible_ray(model).ok_or_else(|| {
                anyhow!("no ray with m_i > 0 whose opposite is in the fan")
            })?;
            check_elemtrans(model, i)
        }
        Check::Stab => check_stab(model),
        Check::Torus => check_torus(model)?,
    })
}

fn run_corpus(check: Check, n: usize) -> Result<CertificateDoc> {
    let seed = corpus::env_seed();
    let name = format!("{} (corpus)", check_name(check));
    if matches!(check, Check::Elemtrans) {
        let mut rng = corpus::rng(seed);
        for t in 0..n {
            let (model, i) = corpus::random_eligible(&mut rng, 12, 3);
            let cert = check_elemtrans(&model, i);
            if !cert.pass {
                return Ok(CertificateDoc::new(
                    &name,
                    false,
                    Some(format!("model #{t}: {:?}", cert.counterexample)),
                    &(seed, n),
                ));
            }
        }
        return Ok(CertificateDoc::new(&name, true, None, &(seed, n)));
    }
    for (t, model) in corpus::random_models(seed, n, 12, 3).iter().enumerate() {
        let cert = run_check(check, model)?;
        if !cert.pass {
            return Ok(CertificateDoc::new(
                &name,
                false,
                Some(format!("model #{t}: {:?}", cert.counterexample)),
                &(seed, n),
            ));
        }
    }
    Ok(CertificateDoc::new(&name, true, None, &(seed, n)))
}

fn check_name(check: Check) -> &'static str {
    match check {
        Check::Monodromy => "monodromy",
        Check::Bridge => "bridge",
        Check::Elemtrans => "elemtrans",
        Check::Stab => "stab",
        Check::Torus => "torus",
    }
}

// ---------------------------------------------------------------------------

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.cmd {
        Cmd::Build => {
            let model = read_model(&cli.input)?;
            let doc = emit_fibration_doc(&build_standard(&model));
            write_output(&cli.out, &(canonical_json(&doc) + "\n"))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { check, corpus } => {
            let cert = match corpus {
                Some(n) => run_corpus(*check, *n)?,
                None => run_check(*check, &read_model(&cli.input)?)?,
            };
            write_output(&cli.out, &(canonical_json(&cert) + "\n"))?;
            Ok(if cert.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::Classify => {
            let model = read_model(&cli.input)?;
            match classify_nontoric_blowdown(&model) {
                Ok(report) => {
                    write_output(&cli.out, &(canonical_json(&report) + "\n"))?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    eprintln!("classification failed: {e}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Cmd::Destab => {
            let model = read_model(&cli.input)?;
            let report = classify_nontoric_blowdown(&model).map_err(|e| anyhow!("{e}"))?;
            let (f, trace) = nontoric_destab_pipeline(&model, &report).map_err(|e| anyhow!("{e}"))?;
            let out = serde_json::json!({
                "fibration": emit_fibration_doc(&f),
                "script": trace.script,
                "snapshots": trace.snapshots,
            });
            write_output(&cli.out, &(canonical_json(&out) + "\n"))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Mmp => {
            let model = read_model(&cli.input)?;
            let (terminal, minimal, blown_down) = fan::mmp_reduce(model.fan());
            let out = serde_json::json!({
                "minimal_model": minimal.to_string(),
                "rays": terminal.rays(),
                "blown_down": blown_down,
            });
            write_output(&cli.out, &(canonical_json(&out) + "\n"))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Cohomology { divisor } => {
            let model = read_model(&cli.input)?;
            let (h0, h1, h2) =
                picard::toric_cohomology(model.fan(), divisor).map_err(|e| anyhow!("{e}"))?;
            write_output(&cli.out, &format!("{h0} {h1} {h2}\n"))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Emit { what } => {
            let model = read_model(&cli.input)?;
            let text = match what {
                EmitKind::Base => canonical_json(&emit::emit_almost_toric(&model)) + "\n",
                EmitKind::Handlebody => canonical_json(&emit::emit_handlebody(&model)) + "\n",
                EmitKind::Svg => emit::emit_svg(&emit::emit_almost_toric(&model)),
            };
            write_output(&cli.out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
