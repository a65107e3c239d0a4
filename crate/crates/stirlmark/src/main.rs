//! Command line front end: enumerate objects, compute statistics, apply the
//! bijections, print named series, verify identities and print polynomial
//! tables. Everything delegates to the library; see the crate examples for
//! programmatic use.

use clap::{Parser, Subcommand};
use stirlmark::named::{named_series, SeriesName};
use stirlmark::objects::{BicoloredTree, CycleStirlingPerm, MarkedPerm, Perm, StirlingPerm};
use stirlmark::verify::{verify_all, verify_identity, Identity, VerifyParams, VerifyResult};
use stirlmark::{generate, maps, stats, verify};

#[derive(Parser)]
#[command(
    name = "stirlmark",
    version,
    about = "Exact enumeration and verification for Stirling and marked permutations"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Stream every object of a class, one encoded object per line
    Enumerate {
        /// perm | marked | stirling | stirling2 | derangement | matching |
        /// h-matching | tree
        #[arg(long)]
        class: String,
        /// object order (for h-matching: the parameter k)
        #[arg(long)]
        n: usize,
        /// number of colors for the marked class
        #[arg(long, default_value_t = 2)]
        r: u32,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Compute the statistics of one encoded object
    Stats {
        /// perm | marked | stirling | stirling2
        #[arg(long)]
        class: String,
        #[arg(long)]
        input: String,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Apply a bijection or involution to one encoded object
    Map {
        /// phi | phi-inv | iota | psi | tree | tree-inv | foata | matching
        #[arg(long)]
        name: String,
        #[arg(long)]
        input: String,
        #[arg(long, default_value = "text")]
        format: String,
        /// emit trees as Graphviz DOT
        #[arg(long)]
        dot: bool,
    },
    /// Print a named series, one line per t-degree
    Series {
        /// eulerian | refined-eulerian | ascent-plateau | marked |
        /// cycle-form | h-numbers | g1 | gr
        #[arg(long)]
        name: String,
        #[arg(long)]
        order: usize,
        /// color count for gr
        #[arg(long, default_value_t = 2)]
        r: u32,
        /// print the derived EGF coefficients instead of the stored ones
        #[arg(long)]
        egf: bool,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Check identities; exit code 0 when everything passes, 1 otherwise
    Verify {
        /// identity name (see --all for the list)
        #[arg(long)]
        identity: Option<String>,
        /// run every identity at its default bounds
        #[arg(long)]
        all: bool,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Print polynomial tables by exhaustive enumeration
    Table {
        /// E (even/odd), N (ascent plateaux), A (Eulerian), F (colored
        /// asc+1/desrlmin)
        #[arg(long)]
        name: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, default_value = "text")]
        format: String,
    },
}

fn usage_error(msg: &str) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(2);
}

fn op_error(msg: &str) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(1);
}

fn main() {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Enumerate {
            class,
            n,
            r,
            format,
        } => enumerate(&class, n, r, &format),
        Cmd::Stats {
            class,
            input,
            format,
        } => object_stats(&class, &input, &format),
        Cmd::Map {
            name,
            input,
            format,
            dot,
        } => apply_map(&name, &input, &format, dot),
        Cmd::Series {
            name,
            order,
            r,
            egf,
            format,
        } => print_series(&name, order, r, egf, &format),
        Cmd::Verify {
            identity,
            all,
            n,
            r,
            order,
            json,
        } => run_verify(identity.as_deref(), all, VerifyParams { n, r, order }, json),
        Cmd::Table { name, n, r, format } => print_table(&name, n, r, &format),
    }
}

fn json_mode(format: &str) -> bool {
    match format {
        "json" => true,
        "text" => false,
        other => usage_error(&format!("unknown format {other:?} (text or json)")),
    }
}

fn enumerate(class: &str, n: usize, r: u32, format: &str) {
    use std::io::Write;
    let json = json_mode(format);
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    // a closed pipe (e.g. piping into head) ends the stream, not the process
    let mut emit = |text: String, value: serde_json::Value| -> bool {
        let res = if json {
            writeln!(out, "{value}")
        } else {
            writeln!(out, "{text}")
        };
        match res {
            Ok(()) => true,
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => false,
            Err(e) => op_error(&e.to_string()),
        }
    };
    match class {
        "perm" => {
            for p in generate::gen_perms(n) {
                if !emit(p.encode_text(), p.to_json()) {
                    return;
                }
            }
        }
        "marked" => {
            for m in generate::gen_marked(n, r) {
                if !emit(m.encode_text(), m.to_json()) {
                    return;
                }
            }
        }
        "stirling" => {
            for s in generate::gen_stirling(n) {
                if !emit(s.encode_text(), s.to_json()) {
                    return;
                }
            }
        }
        "stirling2" => {
            for c in generate::gen_cycle_stirling(n) {
                if !emit(c.encode_text(), c.to_json()) {
                    return;
                }
            }
        }
        "derangement" => {
            for s in generate::gen_stirling_derangements(n) {
                if !emit(s.encode_text(), s.to_json()) {
                    return;
                }
            }
        }
        "matching" => {
            for m in generate::gen_matchings(n) {
                if !emit(m.encode_text(), m.to_json()) {
                    return;
                }
            }
        }
        "h-matching" => {
            for m in generate::gen_h_matchings(n) {
                if !emit(m.encode_text(), m.to_json()) {
                    return;
                }
            }
        }
        "tree" => {
            for t in generate::gen_trees(n) {
                if !emit(t.encode_text(), t.to_json()) {
                    return;
                }
            }
        }
        other => usage_error(&format!("unknown class {other:?}")),
    }
}

fn object_stats(class: &str, input: &str, format: &str) {
    let report = match class {
        "perm" => {
            let p = Perm::decode_text(input).unwrap_or_else(|e| usage_error(&e.to_string()));
            stats::perm_stats(&MarkedPerm::from_perm(&p, 1))
        }
        "marked" => {
            let m = MarkedPerm::decode_text(input).unwrap_or_else(|e| usage_error(&e.to_string()));
            stats::perm_stats(&m)
        }
        "stirling" => {
            let s =
                StirlingPerm::decode_text(input).unwrap_or_else(|e| usage_error(&e.to_string()));
            stats::stirling_stats(&s)
        }
        "stirling2" => {
            let c = CycleStirlingPerm::decode_text(input)
                .unwrap_or_else(|e| usage_error(&e.to_string()));
            stats::cycle_stirling_stats(&c)
        }
        other => usage_error(&format!("unknown class {other:?}")),
    };
    if json_mode(format) {
        println!("{}", report.to_json());
    } else {
        let j = report.to_json();
        let obj = j.as_object().expect("report is an object");
        for (name, entry) in obj {
            let count = &entry["count"];
            match entry.get("set") {
                Some(set) => println!("{name}: {count} {set}"),
                None => println!("{name}: {count}"),
            }
        }
    }
}

fn decode_marked_two_colors(input: &str) -> MarkedPerm {
    let m = MarkedPerm::decode_text(input).unwrap_or_else(|e| usage_error(&e.to_string()));
    if m.colors().iter().any(|&c| c > 1) {
        usage_error("this map expects a marked permutation (colors 0 and 1 only)");
    }
    m.with_r_at_least(2)
}

fn apply_map(name: &str, input: &str, format: &str, dot: bool) {
    let json = json_mode(format);
    let emit_marked = |m: &MarkedPerm| {
        if json {
            println!("{}", m.to_json());
        } else {
            println!("{}", m.encode_text());
        }
    };
    let emit_tree = |t: &BicoloredTree| {
        if dot {
            print!("{}", t.to_dot());
        } else if json {
            println!("{}", t.to_json());
        } else {
            println!("{}", t.encode_text());
        }
    };
    match name {
        "phi" => {
            let s =
                StirlingPerm::decode_text(input).unwrap_or_else(|e| usage_error(&e.to_string()));
            emit_marked(&maps::phi(&s));
        }
        "phi-inv" => {
            let m = decode_marked_two_colors(input);
            match maps::phi_inv(&m) {
                Ok(s) => {
                    if json {
                        println!("{}", s.to_json());
                    } else {
                        println!("{}", s.encode_text());
                    }
                }
                Err(e) => op_error(&e.to_string()),
            }
        }
        "iota" => match maps::iota(&decode_marked_two_colors(input)) {
            Ok(m) => emit_marked(&m),
            Err(e) => op_error(&e.to_string()),
        },
        "psi" => {
            let p = Perm::decode_text(input).unwrap_or_else(|e| usage_error(&e.to_string()));
            let q = maps::psi(&p);
            if json {
                println!("{}", q.to_json());
            } else {
                println!("{}", q.encode_text());
            }
        }
        "tree" => emit_tree(&maps::tree_of(&decode_marked_two_colors(input))),
        "tree-inv" => {
            let t =
                BicoloredTree::decode_text(input).unwrap_or_else(|e| usage_error(&e.to_string()));
            match maps::tree_involution(&t) {
                Ok(out) => emit_tree(&out),
                Err(e) => op_error(&e.to_string()),
            }
        }
        "foata" => {
            let m = decode_marked_two_colors(input);
            let cycles = maps::foata_cycles(&m);
            if json {
                let arr: Vec<serde_json::Value> = cycles
                    .iter()
                    .map(|c| {
                        serde_json::json!(c
                            .iter()
                            .map(|&(v, col)| serde_json::json!({"value": v, "color": col}))
                            .collect::<Vec<_>>())
                    })
                    .collect();
                println!("{}", serde_json::Value::Array(arr));
            } else {
                let text = cycles
                    .iter()
                    .map(|c| {
                        let inner = c
                            .iter()
                            .map(|&(v, col)| {
                                if col == 0 {
                                    v.to_string()
                                } else {
                                    format!("{v}:{col}")
                                }
                            })
                            .collect::<Vec<_>>()
                            .join(" ");
                        format!("({inner})")
                    })
                    .collect::<Vec<_>>()
                    .join(" ");
                println!("{text}");
            }
        }
        "matching" => match maps::matching_of(&decode_marked_two_colors(input)) {
            Ok(m) => {
                if json {
                    println!("{}", m.to_json());
                } else {
                    println!("{}", m.encode_text());
                }
            }
            Err(e) => op_error(&e.to_string()),
        },
        other => usage_error(&format!("unknown map {other:?}")),
    }
}

fn print_series(name: &str, order: usize, r: u32, egf: bool, format: &str) {
    let Some(series_name) = SeriesName::from_name(name) else {
        let all = SeriesName::ALL
            .iter()
            .map(|s| s.name())
            .collect::<Vec<_>>()
            .join(", ");
        usage_error(&format!("unknown series {name:?}; available: {all}"));
    };
    // the refined families enumerate permutations of every smaller size
    let cap = match series_name {
        SeriesName::RefinedEulerian | SeriesName::G1 | SeriesName::Gr => 10,
        _ => 24,
    };
    if order > cap {
        usage_error(&format!(
            "order {order} exceeds the cap of {cap} for this series"
        ));
    }
    if r < 1 {
        usage_error("r must be at least 1");
    }
    match named_series(series_name, order, r) {
        Ok(series) => {
            if json_mode(format) {
                println!("{}", series.to_json());
            } else if egf {
                println!("{}", series.print_lines_egf());
            } else {
                println!("{series}");
            }
        }
        Err(e) => op_error(&e.to_string()),
    }
}

fn run_verify(identity: Option<&str>, all: bool, params: VerifyParams, json: bool) {
    let results: Vec<VerifyResult> = if all {
        verify_all().unwrap_or_else(|e| op_error(&e.to_string()))
    } else {
        let Some(name) = identity else {
            usage_error("pass --identity <name> or --all");
        };
        let Some(id) = Identity::from_name(name) else {
            let all = Identity::ALL
                .iter()
                .map(|i| i.name())
                .collect::<Vec<_>>()
                .join(", ");
            usage_error(&format!("unknown identity {name:?}; available: {all}"));
        };
        match verify_identity(id, &params) {
            Ok(res) => vec![res],
            Err(verify::VerifyError::OutOfBounds(m)) => usage_error(&m),
            Err(e) => op_error(&e.to_string()),
        }
    };
    let mut all_pass = true;
    for res in &results {
        all_pass &= res.pass;
        if json {
            println!("{}", res.to_json());
        } else {
            println!("{res}");
        }
    }
    std::process::exit(if all_pass { 0 } else { 1 });
}

fn print_table(name: &str, n: usize, r: u32, format: &str) {
    use stirlmark::poly::Var;
    use stirlmark::stats::StatName;
    use stirlmark::verify::{dist_poly, ObjClass, WeightSpec};
    let json = json_mode(format);
    let mut rows = Vec::new();
    for m in 0..=n {
        let poly = match name {
            "E" => dist_poly(
                ObjClass::Stirling,
                m,
                &WeightSpec::new()
                    .var(Var::P, StatName::Odd)
                    .var(Var::Q, StatName::Even),
            ),
            "N" => dist_poly(
                ObjClass::Stirling,
                m,
                &WeightSpec::new().var(Var::X, StatName::Ap),
            ),
            "A" => dist_poly(
                ObjClass::Perm,
                m,
                &WeightSpec::new().var(Var::X, StatName::Asc),
            ),
            "F" => verify::desrlmin_dist(m, r),
            other => usage_error(&format!("unknown table {other:?} (E, N, A or F)")),
        };
        match poly {
            Ok(p) => {
                if json {
                    rows.push(serde_json::json!({"n": m, "poly": p.to_json()}));
                } else {
                    println!("{m}: {p}");
                }
            }
            Err(e) => op_error(&e.to_string()),
        }
    }
    if json {
        println!(
            "{}",
            serde_json::json!({"name": name, "r": r, "rows": rows})
        );
    }
}
