//! `atl`: command-line workbench for the affine Temperley-Lieb algebras.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error.

mod render;
mod selftest;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use atl_core::algebra::AlgebraElement;
use atl_core::cellrep::{
    action_matrix, g_polynomial, gram_matrix, pure_component_element, tau_set,
    verify_det_identity,
};
use atl_core::center::{gluing_report, h_polynomial, p_polynomial};
use atl_core::diagram::AffineDiagram;
use atl_core::laurent::{CoeffDomain, DEFAULT_TOL};
use atl_core::matrix::LaurentMatrix;

#[derive(Parser)]
#[command(name = "atl", version, about = "Affine Temperley-Lieb diagram workbench")]
struct Cli {
    /// Optional key = value config file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// symbolic (Laurent polynomials in q) or numeric (fixed complex q)
    #[arg(long, global = true, value_enum)]
    mode: Option<Mode>,
    /// q for numeric mode, as "re,im"
    #[arg(long, global = true, allow_hyphen_values = true)]
    q: Option<String>,
    /// zero-test tolerance for numeric mode
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    output: Option<Output>,
    /// seed for randomized self-checks
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Symbolic,
    Numeric,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
    Svg,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compose two diagram files (first on top of second)
    Compose { a: PathBuf, b: PathBuf },
    /// Multiply two algebra-element files
    Multiply { a: PathBuf, b: PathBuf },
    /// Print the Gram matrix R_k
    Gram {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// Check det R_k = +-G_k for every admissible k
    VerifyDet {
        #[arg(long)]
        n: u32,
    },
    /// Action matrix of an element on the k-th cell module
    Action {
        elem: PathBuf,
        #[arg(long)]
        k: u32,
    },
    /// Element acting as P_r(x^r) B on one cell module and zero elsewhere
    IdealElement {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        /// matrix B as a JSON file (array of rows of polynomials)
        b: PathBuf,
    },
    /// Print G_k, H_k or P_k
    Poly {
        #[arg(value_enum)]
        which: Which,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// Gluing report for the center variety (numeric)
    Gluing {
        #[arg(long)]
        n: u32,
    },
    /// Render a diagram file
    Render {
        diagram: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: RenderFormat,
    },
    /// Run the built-in deterministic self-checks
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    G,
    H,
    P,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RenderFormat {
    Svg,
    Text,
}

struct Config {
    mode: Mode,
    q: Complex64,
    tol: f64,
    output: Output,
    seed: u64,
}

impl Config {
    fn domain(&self) -> Result<CoeffDomain, String> {
        match self.mode {
            Mode::Symbolic => Ok(CoeffDomain::LaurentInQ),
            Mode::Numeric => CoeffDomain::complex(self.q, self.tol)
                .map_err(|e| format!("invalid numeric mode: {e}")),
        }
    }
}

fn fmt_c(z: Complex64) -> String {
    let im = if z.im == 0.0 { 0.0 } else { z.im }; // normalize -0
    format!("{:.6}{:+.6}i", z.re, im)
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = match s.split_once(',') {
        Some((re, im)) => (re, im),
        None => (s, "0"),
    };
    let re: f64 = re.trim().parse().map_err(|_| format!("bad complex {s:?}"))?;
    let im: f64 = im.trim().parse().map_err(|_| format!("bad complex {s:?}"))?;
    Ok(Complex64::new(re, im))
}

/// Key = value lines; '#' starts a comment.
fn load_config_file(path: &Path) -> Result<Vec<(String, String)>, String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("bad config line {line:?}"))?;
        out.push((k.trim().to_string(), v.trim().trim_matches('"').to_string()));
    }
    Ok(out)
}

fn resolve_config(cli: &Cli) -> Result<Config, String> {
    let mut mode = None;
    let mut q = None;
    let mut tol = None;
    let mut output = None;
    let mut seed = None;
    if let Some(path) = &cli.config {
        for (k, v) in load_config_file(path)? {
            match k.as_str() {
                "mode" => {
                    mode = Some(match v.as_str() {
                        "symbolic" => Mode::Symbolic,
                        "numeric" => Mode::Numeric,
                        _ => return Err(format!("bad mode {v:?}")),
                    })
                }
                "q" => q = Some(parse_complex(&v)?),
                "tol" => tol = Some(v.parse().map_err(|_| format!("bad tol {v:?}"))?),
                "output" => {
                    output = Some(match v.as_str() {
                        "text" => Output::Text,
                        "json" => Output::Json,
                        "svg" => Output::Svg,
                        _ => return Err(format!("bad output {v:?}")),
                    })
                }
                "seed" => seed = Some(v.parse().map_err(|_| format!("bad seed {v:?}"))?),
                _ => return Err(format!("unknown config key {k:?}")),
            }
        }
    }
    if let Some(m) = cli.mode {
        mode = Some(m);
    }
    if let Some(s) = &cli.q {
        q = Some(parse_complex(s)?);
    }
    if let Some(t) = cli.tol {
        tol = Some(t);
    }
    if let Some(o) = cli.output {
        output = Some(o);
    }
    if let Some(s) = cli.seed {
        seed = Some(s);
    }
    let mode = mode.unwrap_or(if q.is_some() { Mode::Numeric } else { Mode::Symbolic });
    let q = q.unwrap_or(Complex64::new(0.0, 0.0));
    if mode == Mode::Numeric && q.norm() == 0.0 {
        return Err("numeric mode needs a nonzero --q".into());
    }
    Ok(Config {
        mode,
        q,
        tol: tol.unwrap_or(DEFAULT_TOL),
        output: output.unwrap_or(Output::Text),
        seed: seed.unwrap_or(0),
    })
}

fn read_json(path: &Path) -> Result<Value, String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn print_matrix(m: &LaurentMatrix, out: Output) {
    match out {
        Output::Json => println!("{}", m.to_json()),
        _ => print!("{}", m.fmt_table()),
    }
}

fn run(cli: &Cli) -> Result<u8, String> {
    let cfg = resolve_config(cli)?;
    match &cli.cmd {
        Cmd::Compose { a, b } => {
            let da = AffineDiagram::from_json(&read_json(a)?).map_err(|e| e.to_string())?;
            let db = AffineDiagram::from_json(&read_json(b)?).map_err(|e| e.to_string())?;
            let r = da.compose(&db).map_err(|e| e.to_string())?;
            match cfg.output {
                Output::Json => println!(
                    "{}",
                    json!({"diagram": r.diagram.to_json(), "loops": r.loops, "delta_power": r.loops})
                ),
                Output::Svg => println!("{}", render::render_svg(&r.diagram)),
                Output::Text => {
                    println!("loops removed: {} (factor delta^{})", r.loops, r.loops);
                    print!("{}", render::render_text(&r.diagram));
                }
            }
            Ok(0)
        }
        Cmd::Multiply { a, b } => {
            let dom = cfg.domain()?;
            let ea =
                AlgebraElement::from_json(&read_json(a)?, &dom).map_err(|e| e.to_string())?;
            let eb =
                AlgebraElement::from_json(&read_json(b)?, &dom).map_err(|e| e.to_string())?;
            let prod = ea.multiply(&eb).map_err(|e| e.to_string())?;
            match cfg.output {
                Output::Json => println!("{}", prod.to_json()),
                _ => {
                    println!("{} terms:", prod.num_terms());
                    for (d, c) in prod.terms() {
                        println!("  coeff {}", c.fmt_with_var("x"));
                        print!("{}", render::render_text(d));
                    }
                }
            }
            Ok(0)
        }
        Cmd::Gram { n, k } => {
            let m = gram_matrix(*k, *n, &cfg.domain()?).map_err(|e| e.to_string())?;
            print_matrix(&m, cfg.output);
            Ok(0)
        }
        Cmd::VerifyDet { n } => {
            let dom = cfg.domain()?;
            let mut lines = Vec::new();
            let mut bad = false;
            for k in tau_set(*n) {
                match verify_det_identity(k, *n, &dom) {
                    Ok(sign) => lines.push(json!({"k": k, "sign": sign})),
                    Err(e) => {
                        bad = true;
                        lines.push(json!({"k": k, "error": e.to_string()}));
                    }
                }
            }
            match cfg.output {
                Output::Json => println!("{}", json!({"N": n, "results": lines})),
                _ => {
                    for l in &lines {
                        if let Some(sign) = l.get("sign").and_then(Value::as_i64) {
                            println!(
                                "k={}: det R_k = {}G_k",
                                l["k"],
                                if sign > 0 { "+" } else { "-" }
                            );
                        } else {
                            println!("k={}: FAILED: {}", l["k"], l["error"]);
                        }
                    }
                }
            }
            Ok(if bad { 1 } else { 0 })
        }
        Cmd::Action { elem, k } => {
            let dom = cfg.domain()?;
            let e =
                AlgebraElement::from_json(&read_json(elem)?, &dom).map_err(|e| e.to_string())?;
            let m = action_matrix(&e, *k).map_err(|e| e.to_string())?;
            print_matrix(&m, cfg.output);
            Ok(0)
        }
        Cmd::IdealElement { n, r, b } => {
            let dom = cfg.domain()?;
            let bm =
                LaurentMatrix::from_json(&read_json(b)?, &dom).map_err(|e| e.to_string())?;
            match pure_component_element(*r, &bm, *n) {
                Ok(a) => {
                    match cfg.output {
                        Output::Json => println!("{}", a.to_json()),
                        _ => {
                            let arg = if *r == 0 { "x".into() } else { format!("x^{r}") };
                            println!(
                                "element with {} terms; pi_{r} = P_{r}({arg}) B, other components zero",
                                a.num_terms()
                            );
                        }
                    }
                    Ok(0)
                }
                Err(e) => {
                    eprintln!("construction failed: {e}");
                    Ok(1)
                }
            }
        }
        Cmd::Poly { which, n, k } => {
            let dom = cfg.domain()?;
            let p = match which {
                Which::G => g_polynomial(*k, *n, &dom),
                Which::H => h_polynomial(*k, *n, &dom),
                Which::P => p_polynomial(*k, *n, &dom),
            }
            .map_err(|e| e.to_string())?;
            match cfg.output {
                Output::Json => println!("{}", p.to_json()),
                _ => println!("{}", p.fmt_with_var("x")),
            }
            Ok(0)
        }
        Cmd::Gluing { n } => {
            if cfg.mode != Mode::Numeric {
                return Err("gluing needs numeric mode: pass --q re,im".into());
            }
            let rep = gluing_report(*n, cfg.q, cfg.tol).map_err(|e| e.to_string())?;
            match cfg.output {
                Output::Json => println!("{}", rep.to_json()),
                _ => {
                    println!(
                        "N = {}, q = {}, {} irreducible components",
                        rep.n,
                        fmt_c(rep.q),
                        rep.component_count
                    );
                    println!("candidate identifications ({}):", rep.candidates.len());
                    for (a, b) in &rep.candidates {
                        println!(
                            "  sheet {} z = {}  ~  sheet {} z = {}",
                            a.k,
                            fmt_c(a.z),
                            b.k,
                            fmt_c(b.z)
                        );
                    }
                    match &rep.confirmed {
                        None => println!("confirmed: N != 3: candidates only"),
                        Some(list) => {
                            println!("confirmed gluings ({}):", list.len());
                            for (a, b) in list {
                                println!(
                                    "  sheet {} z = {}  =  sheet {} w = {}",
                                    a.k,
                                    fmt_c(a.z),
                                    b.k,
                                    fmt_c(b.z)
                                );
                            }
                        }
                    }
                }
            }
            Ok(0)
        }
        Cmd::Render { diagram, format } => {
            let d =
                AffineDiagram::from_json(&read_json(diagram)?).map_err(|e| e.to_string())?;
            match format {
                RenderFormat::Svg => println!("{}", render::render_svg(&d)),
                RenderFormat::Text => print!("{}", render::render_text(&d)),
            }
            Ok(0)
        }
        Cmd::Selftest => Ok(selftest::run(cfg.seed)),
    }
}

fn main() -> ExitCode {
    // die quietly when the output pipe closes early (e.g. piping into head)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
