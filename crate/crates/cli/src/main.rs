use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qmzv::enumerate::{closed_form_count, enumerate_admissible};
use qmzv::io::{bundled, export_system, import_system, parse_identities};
use qmzv::okounkov::{verify_okounkov, IiLattice};
use qmzv::relations::gen_all;
use qmzv::series::{eval_py_lincomb, eval_zword};
use qmzv::shuffle::{shuffle, to_type_basis};
use qmzv::stuffle::{stuffle, stuffle_o};
use qmzv::table::{table, TableOptions};
use qmzv::{LinComb, PyWord, TypeTag, ZWord};

#[derive(Parser)]
#[command(
    name = "qmzv",
    version,
    about = "Stuffle, shuffle and relation tables for q-multiple zeta values"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Value family: i, i~, ii, iii, iv, iv~, g, o
    #[arg(long = "type", short = 't', global = true, default_value = "ii")]
    ty: TypeTag,
    #[arg(long, short = 'w', global = true, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    weight: u32,
    #[arg(long, global = true, default_value_t = 0)]
    delta: u32,
    /// Series truncation order N
    #[arg(long, short = 'N', global = true, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    order: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads (0 = all cores)
    #[arg(long, short = 'j', global = true, default_value_t = 0)]
    jobs: usize,
    /// Write output here instead of stdout
    #[arg(long, short = 'o', global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Admissible word counts per weight, enumerated and closed form
    Count,
    /// List the admissible words up to the weight
    Words,
    /// Stuffle product of two words of the chosen type
    Stuffle { u: String, v: String },
    /// Shuffle product; with --type the operands are typical words of that type
    Shuffle {
        u: String,
        v: String,
        /// Read the operands as operator words (ρ π y)
        #[arg(long)]
        py: bool,
    },
    /// Truncated q-series of a word
    Eval {
        word: String,
        #[arg(long)]
        py: bool,
    },
    /// Reverse-swap dual of a pure operator word
    Dual { word: String },
    /// Dimension / deficiency table
    Table {
        /// Import G relations of this weight for the improved deficiency
        #[arg(long)]
        g_weight: Option<u32>,
    },
    /// Check that every identity in a JSON file (or a bundled name) vanishes
    Verify { file: String },
    /// Compare O dimensions with the conjectured generating function
    Okounkov {
        /// Certify through the type II lattice up to this weight
        #[arg(long, default_value_t = 6)]
        certify_up_to: u32,
    },
    /// Dump the DBSF, duality and P-R relations as JSON
    ExportRelations,
    /// Read a relation dump and report its rank
    ImportRelations {
        file: PathBuf,
        /// Also check every row against the series
        #[arg(long)]
        check: bool,
    },
}

struct Outcome {
    text: String,
    json: serde_json::Value,
    ok: bool,
}

impl Outcome {
    fn ok(text: String, json: serde_json::Value) -> Self {
        Self {
            text,
            json,
            ok: true,
        }
    }
}

fn parse_word(ty: TypeTag, s: &str) -> anyhow::Result<ZWord> {
    let w: ZWord = s.parse().with_context(|| format!("parsing {s:?}"))?;
    w.check_admissible(ty)?;
    Ok(w)
}

fn comb_json<W: Ord + Clone + std::fmt::Display>(c: &LinComb<W>) -> serde_json::Value {
    c.iter()
        .map(|(w, k)| serde_json::json!([w.to_string(), qmzv::rational::format_rational(k)]))
        .collect()
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let c = &cli.common;
    let order = c.order as usize;
    let ty = c.ty;
    Ok(match &cli.command {
        Command::Count => {
            let mut text = String::new();
            let mut rows = Vec::new();
            let mut ok = true;
            for w in 1..=c.weight {
                let n = enumerate_admissible(ty, w).len() as u64;
                let closed = closed_form_count(ty, w);
                ok &= n == closed;
                text.push_str(&format!("w={w}: {n} (closed form {closed})\n"));
                rows.push(
                    serde_json::json!({ "weight": w, "enumerated": n, "closed_form": closed }),
                );
            }
            Outcome {
                text,
                json: rows.into(),
                ok,
            }
        }
        Command::Words => {
            let words = enumerate_admissible(ty, c.weight);
            let mut text = String::new();
            let mut items = Vec::new();
            for w in &words {
                match w.composition(ty) {
                    Ok(comp) => {
                        text.push_str(&format!("{w}\t{comp}\n"));
                        items.push(
                            serde_json::json!({ "word": w.to_string(), "s": comp.s, "t": comp.t }),
                        );
                    }
                    Err(_) => {
                        text.push_str(&format!("{w}\n"));
                        items.push(serde_json::json!({ "word": w.to_string() }));
                    }
                }
            }
            Outcome::ok(text, items.into())
        }
        Command::Stuffle { u, v } => {
            let (u, v) = (parse_word(ty, u)?, parse_word(ty, v)?);
            let prod = if ty == TypeTag::O {
                stuffle_o(&u, &v)?
            } else {
                stuffle(ty, &u, &v)?
            };
            Outcome::ok(format!("{prod}\n"), comb_json(&prod))
        }
        Command::Shuffle { u, v, py } => {
            if *py {
                let u: PyWord = u.parse()?;
                let v: PyWord = v.parse()?;
                let prod = shuffle(&u, &v);
                Outcome::ok(format!("{prod}\n"), comb_json(&prod))
            } else {
                if ty == TypeTag::O {
                    bail!("type O has no typical-form shuffle; use --py on expanded words");
                }
                let (u, v) = (parse_word(ty, u)?, parse_word(ty, v)?);
                let mut sh = qmzv::shuffle::Shuffler::new();
                let prod = to_type_basis(ty, &sh.shuffle_comb(&u.to_py(ty)?, &v.to_py(ty)?))?;
                Outcome::ok(format!("{prod}\n"), comb_json(&prod))
            }
        }
        Command::Eval { word, py } => {
            let series = if *py {
                let w: PyWord = word.parse()?;
                eval_py_lincomb(&LinComb::word(w), order)?
            } else {
                eval_zword(&parse_word(ty, word)?, ty, order)?
            };
            let json = serde_json::json!({ "order": order, "coeffs": series.to_json_strings() });
            Outcome::ok(format!("{series}\n"), json)
        }
        Command::Dual { word } => {
            let p: PyWord = word.parse()?;
            let d = p.dual()?;
            let mut text = format!("{p} -> {d}\n");
            let mut json = serde_json::json!({ "word": p.to_string(), "dual": d.to_string() });
            if ty != TypeTag::O {
                let lhs = qmzv::basis::pure_to_type(ty, &LinComb::word(p.clone()))?;
                let rhs = qmzv::basis::pure_to_type(ty, &LinComb::word(d))?;
                text.push_str(&format!("{lhs} = {rhs}\n"));
                json["relation"] =
                    serde_json::json!({ "lhs": comb_json(&lhs), "rhs": comb_json(&rhs) });
            }
            Outcome::ok(text, json)
        }
        Command::Table { g_weight } => {
            let opts = TableOptions {
                order,
                delta: c.delta,
                g_weight: *g_weight,
                ..TableOptions::default()
            };
            let t = table(ty, c.weight, &opts)?;
            let json: serde_json::Value = serde_json::from_str(&t.to_json())?;
            Outcome::ok(t.render_text(), json)
        }
        Command::Verify { file } => {
            let text_in = match bundled(file) {
                Some(t) if !std::path::Path::new(file).exists() => t.to_string(),
                _ => fs::read_to_string(file).with_context(|| format!("reading {file}"))?,
            };
            let ids = if text_in.trim().is_empty() {
                Vec::new()
            } else {
                parse_identities(&text_in)?
            };
            let mut text = String::new();
            let mut items = Vec::new();
            let mut ok = true;
            for id in &ids {
                let residual = qmzv::series::eval_composition_lincomb(&id.terms, order)?;
                let first = residual.valuation();
                ok &= first.is_none();
                match first {
                    None => text.push_str(&format!("PASS {}\n", id.name)),
                    Some(n) => text.push_str(&format!(
                        "FAIL {}: coefficient of q^{n} is {}\n",
                        id.name,
                        qmzv::rational::format_rational(residual.coeff(n))
                    )),
                }
                items.push(serde_json::json!({ "name": id.name, "pass": first.is_none(), "first_nonzero": first }));
            }
            text.push_str(&format!(
                "{} of {} identities vanish to order {order}\n",
                items.iter().filter(|i| i["pass"] == true).count(),
                ids.len()
            ));
            Outcome {
                text,
                json: items.into(),
                ok,
            }
        }
        Command::Okounkov { certify_up_to } => {
            let mut text = String::new();
            let mut items = Vec::new();
            let mut ok = true;
            for w in 2..=c.weight {
                let lattice = if w <= *certify_up_to {
                    Some(IiLattice::new(w)?)
                } else {
                    None
                };
                let r = verify_okounkov(w, order, lattice.as_ref())?;
                ok &= r.passes();
                let cert = r.certified_dim.map_or("-".to_string(), |d| d.to_string());
                text.push_str(&format!(
                    "w={w}: words {}, conjectured {}, series rank {}, certified {cert}\n",
                    r.words, r.conjectured, r.series_rank
                ));
                items.push(serde_json::to_value(&r)?);
            }
            Outcome {
                text,
                json: items.into(),
                ok,
            }
        }
        Command::ExportRelations => {
            let sys = gen_all(ty, c.weight)?;
            let dump = export_system(&sys)?;
            let json: serde_json::Value = serde_json::from_str(&dump)?;
            Outcome::ok(format!("{dump}\n"), json)
        }
        Command::ImportRelations { file, check } => {
            let sys = import_system(
                &fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?,
            )?;
            let rank = sys.rank();
            let unsound = if *check {
                Some(sys.unsound_rows(order)?)
            } else {
                None
            };
            let ok = unsound.as_ref().is_none_or(Vec::is_empty);
            let mut text = format!(
                "type {} weight {}: {} words, {} rows, rank {rank}\n",
                sys.ty,
                sys.weight,
                sys.basis.len(),
                sys.rows.len()
            );
            if let Some(bad) = &unsound {
                text.push_str(&format!(
                    "{} rows fail to vanish to order {order}\n",
                    bad.len()
                ));
            }
            let json = serde_json::json!({
                "type": sys.ty, "weight": sys.weight, "words": sys.basis.len(),
                "rows": sys.rows.len(), "rank": rank, "unsound": unsound,
            });
            Outcome { text, json, ok }
        }
    })
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    if cli.common.jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.common.jobs)
            .build_global();
    }
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let rendered = match cli.common.format {
        Format::Text => outcome.text,
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&outcome.json).expect("serializable")
        ),
    };
    let written = match &cli.common.out {
        Some(path) => {
            fs::write(path, rendered).with_context(|| format!("writing {}", path.display()))
        }
        None => std::io::stdout()
            .write_all(rendered.as_bytes())
            .map_err(Into::into),
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
