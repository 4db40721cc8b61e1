use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use vertexeum::correspondence::{gw_local_curve, gw_p3_line_example, gw_to_dt};
use vertexeum::partitions::{enumerate_with_legs, format_legs, no_legs, parse_legs, Legs, Partition3D};
use vertexeum::toric::{bott_exponent, degree0_partition_function, load_geometry, ToricGeometry};
use vertexeum::vertex::{vertex_character, vertex_measure, vertex_series};
use vertexeum::verify::{run_suite, SUITES};

const THREADS_ENV: &str = "VERTEXEUM_THREADS";

#[derive(Parser, Debug)]
#[command(name = "vertexeum", version, about = "Exact equivariant vertex computations")]
struct Cli {
    /// Print structured JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Maximum number of worker threads (default: VERTEXEUM_THREADS or all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List 3-dimensional partitions of a given size
    Enumerate {
        #[arg(long)]
        n: i64,
        /// Leg profiles, e.g. 1,0,0 or 2.1,,1
        #[arg(long)]
        legs: Option<String>,
    },
    /// Vertex character and measure of a finite partition
    Measure {
        /// File with one "x,y,z" box per line
        #[arg(long)]
        partition: String,
    },
    /// The generating series W(legs) to a given order
    Series {
        #[arg(long, default_value_t = 6)]
        order: usize,
        #[arg(long)]
        legs: Option<String>,
    },
    /// Run a verification suite
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        /// Order or size bound (suite default if omitted)
        #[arg(long)]
        order: Option<usize>,
    },
    /// Degree-zero toric partition functions
    Toric {
        #[command(subcommand)]
        what: ToricCommand,
    },
    /// Gromov-Witten to Donaldson-Thomas conversion examples
    Gwdt {
        #[command(subcommand)]
        what: GwdtCommand,
    },
}

#[derive(Subcommand, Debug)]
enum ToricCommand {
    /// Exponent of M(-q)
    Exponent {
        #[arg(long)]
        geometry: String,
        #[arg(long, default_value_t = 6)]
        order: usize,
    },
    /// The series M(-q)^exponent
    Z0 {
        #[arg(long)]
        geometry: String,
        #[arg(long, default_value_t = 6)]
        order: usize,
    },
}

#[derive(Subcommand, Debug)]
enum GwdtCommand {
    /// Local curve of genus g and degree d
    Local {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        d: i64,
    },
    /// Line class on P^3 with one primary and one descendent insertion
    P3Example,
}

/// Failure kinds, mapped to exit status.
enum Failure {
    Usage(String),
    Verification(Output),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Verification(_) | Failure::Internal(_) => 1,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn internal(e: impl std::fmt::Display) -> Failure {
    Failure::Internal(e.to_string())
}

fn legs_arg(legs: &Option<String>) -> Result<Legs, Failure> {
    match legs {
        Some(s) => parse_legs(s).map_err(usage),
        None => Ok(no_legs()),
    }
}

fn geometry_arg(g: &str) -> Result<ToricGeometry, Failure> {
    match load_geometry(g) {
        Ok(geo) => Ok(geo),
        Err(_) if std::path::Path::new(g).exists() => {
            let text = std::fs::read_to_string(g).map_err(usage)?;
            load_geometry(&text).map_err(usage)
        }
        Err(e) => Err(usage(format!("{g}: not a fixture name or readable file ({e})"))),
    }
}

fn cells_json(cells: &[[u32; 3]]) -> Value {
    json!(cells)
}

/// Output of a successful command: text form and JSON form.
struct Output {
    text: String,
    json: Value,
}

fn run(cmd: &Command) -> Result<Output, Failure> {
    match cmd {
        Command::Enumerate { n, legs } => {
            let legs = legs_arg(legs)?;
            let parts = enumerate_with_legs(&legs, *n, None).map_err(usage)?;
            let extra: Vec<Vec<[u32; 3]>> = parts.iter().map(|p| p.extra_cells()).collect();
            let mut text = format!("{} partitions\n", parts.len());
            for cells in &extra {
                let row: Vec<String> = cells.iter().map(|c| format!("{},{},{}", c[0], c[1], c[2])).collect();
                text.push_str(&row.join(";"));
                text.push('\n');
            }
            let json = json!({
                "n": n,
                "legs": format_legs(&legs),
                "count": parts.len(),
                "partitions": extra.iter().map(|c| cells_json(c)).collect::<Vec<_>>(),
            });
            Ok(Output { text, json })
        }
        Command::Measure { partition } => {
            let text = std::fs::read_to_string(partition).map_err(|e| usage(format!("{partition}: {e}")))?;
            let p = Partition3D::from_text(&text).map_err(usage)?;
            let v = vertex_character(&p).map_err(internal)?;
            let w = vertex_measure(&p).map_err(internal)?;
            let terms: Vec<Value> = v.terms().map(|(k, c)| json!([k, c])).collect();
            let json = json!({
                "partition": cells_json(p.cells()),
                "size": p.size(),
                "character": terms,
                "measure": w.to_string(),
                "rational_function": w.to_ratfunc().to_string(),
            });
            let text = format!("size {}\ncharacter {v}\nmeasure {w}\n", p.size());
            Ok(Output { text, json })
        }
        Command::Series { order, legs } => {
            let legs = legs_arg(legs)?;
            let w = vertex_series(&legs, *order).map_err(internal)?;
            let doc = w.series.to_document();
            let mut text = String::new();
            for (k, c) in doc.coefficients.iter().enumerate() {
                text.push_str(&format!("q^{k}: {c}\n"));
            }
            let json = json!({
                "legs": format_legs(&legs),
                "order": doc.order,
                "coefficients": doc.coefficients,
            });
            Ok(Output { text, json })
        }
        Command::Verify { suite, order } => {
            let report = run_suite(suite, *order).map_err(internal)?;
            let mut text = String::new();
            for c in &report.checks {
                let mark = if c.passed { "ok  " } else { "FAIL" };
                text.push_str(&format!("{mark} {}", c.name));
                if !c.detail.is_empty() {
                    text.push_str(&format!(" ({})", c.detail));
                }
                text.push('\n');
            }
            text.push_str(&format!("{} {}\n", suite, if report.passed { "PASS" } else { "FAIL" }));
            let json = serde_json::to_value(&report).map_err(internal)?;
            if report.passed {
                Ok(Output { text, json })
            } else {
                Err(Failure::Verification(Output { text, json }))
            }
        }
        Command::Toric { what } => match what {
            ToricCommand::Exponent { geometry, order: _ } => {
                let g = geometry_arg(geometry)?;
                let e = bott_exponent(&g).map_err(internal)?;
                let json = json!({ "geometry": g.name, "exponent": e.to_string(), "constant": e.as_constant().is_some() });
                Ok(Output { text: format!("{e}\n"), json })
            }
            ToricCommand::Z0 { geometry, order } => {
                let g = geometry_arg(geometry)?;
                let z = degree0_partition_function(&g, *order).map_err(internal)?;
                let doc = z.to_document();
                let mut text = String::new();
                for (k, c) in doc.coefficients.iter().enumerate() {
                    text.push_str(&format!("q^{k}: {c}\n"));
                }
                let json = json!({ "geometry": g.name, "order": doc.order, "coefficients": doc.coefficients });
                Ok(Output { text, json })
            }
        },
        Command::Gwdt { what } => {
            let (label, r) = match what {
                GwdtCommand::Local { g, d } => {
                    if 2 * g - 2 + d < 0 && (*g, *d) != (0, 1) {
                        return Err(usage(format!("2g-2+d must be nonnegative (or g=0, d=1); got g={g}, d={d}")));
                    }
                    (format!("local g={g} d={d}"), gw_to_dt(&gw_local_curve(*g, *d), *d, 0))
                }
                GwdtCommand::P3Example => ("p3-example".to_string(), gw_to_dt(&gw_p3_line_example(), 4, 1)),
            };
            let r = r.map_err(internal)?;
            Ok(Output { text: format!("{r}\n"), json: json!({ "case": label, "dt": r.to_string() }) })
        }
    }
}

fn thread_cap(flag: Option<usize>) -> Result<Option<usize>, Failure> {
    if let Some(n) = flag {
        return if n == 0 { Err(usage("--threads must be positive")) } else { Ok(Some(n)) };
    }
    match std::env::var(THREADS_ENV) {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(usage(format!("{THREADS_ENV}={s:?} is not a positive integer"))),
        },
        Err(_) => Ok(None),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = thread_cap(cli.threads).and_then(|cap| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = cap {
            builder = builder.num_threads(n);
        }
        let pool = builder.build().map_err(internal)?;
        pool.install(|| run(&cli.command))
    });
    let print = |out: &Output| {
        if cli.json {
            println!("{}", serde_json::to_string_pretty(&out.json).expect("json"));
        } else {
            print!("{}", out.text);
        }
    };
    match result {
        Ok(out) => {
            print(&out);
            ExitCode::SUCCESS
        }
        Err(f) => {
            match &f {
                Failure::Verification(out) => print(out),
                Failure::Usage(m) | Failure::Internal(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
