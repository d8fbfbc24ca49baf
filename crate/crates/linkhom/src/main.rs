//! Command-line surface: `analyze`, `pair`, `complex`, `chambers`, `verify`.

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use linkhom::betti::{dim_and_connectivity, p3_closed, p5_closed, pair_poincare};
use linkhom::chains::{build_e, homology};
use linkhom::euler::{betti_bounds, chi_m4, chi_m6};
use linkhom::lengths::{enumerate_chambers, enumerate_chambers_unbounded, Chamber, LengthVector};
use linkhom::oracle::{run_suite, CheckReport, Scope};
use linkhom::poly::IntPolynomial;
use linkhom::{render, Error};

#[derive(Parser)]
#[command(
    name = "linkhom",
    about = "Exact homological invariants of moduli spaces of closed linkages",
    version
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Latex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScopeArg {
    All,
    P3,
    P5,
    Pair,
    Chi,
    Generators,
}

impl From<ScopeArg> for Scope {
    fn from(s: ScopeArg) -> Scope {
        match s {
            ScopeArg::All => Scope::All,
            ScopeArg::P3 => Scope::P3,
            ScopeArg::P5 => Scope::P5,
            ScopeArg::Pair => Scope::Pair,
            ScopeArg::Chi => Scope::Chi,
            ScopeArg::Generators => Scope::Generators,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Full invariant report for one length vector.
    Analyze {
        /// Comma-separated lengths: integers, fractions `p/q`, or exact decimals.
        #[arg(long)]
        ell: String,
        /// Report dimension/connectivity for this ambient dimension only.
        #[arg(long)]
        d: Option<i64>,
    },
    /// Poincaré polynomial of the relative pair (X^k_d, dX^k_d) and its
    /// Euler characteristic.
    Pair {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        k: i64,
    },
    /// Generators, boundary matrices and homology of the complex E(m, j).
    Complex {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        j: i64,
        /// Lift the desk-scale guard (m <= 6, j <= 10); may be slow.
        #[arg(long)]
        force: bool,
    },
    /// Census of chambers up to permutation, with invariants per chamber.
    Chambers {
        #[arg(long)]
        n: usize,
        /// Keep only chambers with nonempty moduli (a_0 = 1).
        #[arg(long)]
        nonempty: bool,
        /// Lift the n <= 8 guard; may be slow.
        #[arg(long)]
        force: bool,
    },
    /// Run the cross-check suite; exit code 0 iff every check passes.
    Verify {
        #[arg(long, value_enum, default_value_t = ScopeArg::All)]
        scope: ScopeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() {
    init_threads();
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    };
    std::process::exit(code);
}

fn init_threads() {
    if let Ok(v) = std::env::var("LINKHOM_THREADS") {
        if let Ok(k) = v.parse::<usize>() {
            if k >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(k)
                    .build_global();
            }
        }
    }
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Analyze { ell, d } => cmd_analyze(&ell, d, cli.format),
        Command::Pair { d, k } => cmd_pair(d, k, cli.format),
        Command::Complex { m, j, force } => cmd_complex(m, j, force, cli.format),
        Command::Chambers { n, nonempty, force } => cmd_chambers(n, nonempty, force, cli.format),
        Command::Verify { scope, seed } => Ok(cmd_verify(scope.into(), seed, cli.format)),
    }
}

fn poly_value(p: &IntPolynomial, format: Format) -> Value {
    match format {
        Format::Json => render::json(p),
        Format::Latex => Value::String(render::latex(p)),
        Format::Plain => Value::String(render::plain(p)),
    }
}

fn poly_text(p: &IntPolynomial, format: Format) -> String {
    match format {
        Format::Latex => render::latex(p),
        _ => render::plain(p),
    }
}

fn bigint_value(v: &BigInt) -> Value {
    Value::Number(serde_json::Number::from_string_unchecked(v.to_string()))
}

fn cmd_analyze(ell: &str, d: Option<i64>, format: Format) -> Result<i32, Error> {
    let l = LengthVector::parse(ell)?;
    let n = l.n() as i64;
    let json_mode = format == Format::Json;
    let mut out = serde_json::Map::new();
    out.insert("ell".into(), json!(l.to_string()));
    out.insert("n".into(), json!(n));

    if let Some(witness) = l.median_witness() {
        out.insert("generic".into(), json!(false));
        out.insert("median_witness".into(), json!(witness.indices()));
        if json_mode {
            println!("{}", Value::Object(out));
        } else {
            println!("ell = {l}   (n = {n})");
            println!("generic: no (median subset {witness})");
        }
        return Ok(0);
    }
    out.insert("generic".into(), json!(true));
    out.insert("dominating_indices".into(), json!(l.dominating_indices()));
    let stats = l.short_set_stats()?;
    out.insert("a".into(), json!(stats.a));
    let empty = !stats.a0_nonempty;
    out.insert("empty_moduli".into(), json!(empty));
    let key = l.chamber_key()?;
    out.insert("chamber_key".into(), serde_json::to_value(&key).unwrap());

    let dims: Vec<i64> = match d {
        Some(d) => vec![d],
        None => vec![3, 4, 5, 6],
    };
    let dim_rows: Vec<Value> = dims
        .iter()
        .map(|&d| {
            let info = dim_and_connectivity(n, d);
            json!({
                "d": d,
                "dimension": info.dimension,
                "connectivity": info.connectivity,
                "sphere_dimension": info.sphere_dimension,
            })
        })
        .collect();
    out.insert("spaces".into(), json!(dim_rows));

    let p3 = p3_closed(&l)?;
    out.insert("p3".into(), poly_value(&p3, format));

    if empty {
        out.insert("mu".into(), json!("empty moduli space"));
        out.insert("p5".into(), json!("empty moduli space"));
        out.insert("chi_m4".into(), json!("empty moduli space"));
        out.insert("chi_m6".into(), json!("empty moduli space"));
    } else {
        let mu = l.morse_numbers()?;
        out.insert("mu".into(), json!(mu.mu));
        match p5_closed(&l) {
            Ok(p5) => {
                out.insert("p5".into(), poly_value(&p5, format));
            }
            Err(Error::TooShort { .. }) => {
                out.insert("p5".into(), json!("needs n >= 5"));
            }
            Err(e) => return Err(e),
        }
        match chi_m4(&l) {
            Ok(chi) => {
                out.insert("chi_m4".into(), bigint_value(&chi));
            }
            Err(Error::TooShort { .. }) => {
                out.insert("chi_m4".into(), json!("needs n >= 5"));
            }
            Err(e) => return Err(e),
        }
        match chi_m6(&l) {
            Ok(chi) => {
                out.insert("chi_m6".into(), bigint_value(&chi));
            }
            Err(Error::TooShort { .. }) => {
                out.insert("chi_m6".into(), json!("needs n >= 7"));
            }
            Err(e) => return Err(e),
        }
        let mut bound_rows = Vec::new();
        for dd in [4i64, 6] {
            match betti_bounds(&l, dd) {
                Ok(bounds) => {
                    for b in bounds {
                        bound_rows.push(json!({
                            "d": dd,
                            "degree": b.degree,
                            "lower": bigint_value(&b.lower),
                            "upper": bigint_value(&b.upper),
                            "exact_difference": b.exact_difference.as_ref().map(bigint_value),
                        }));
                    }
                }
                Err(Error::TooShort { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        out.insert("betti_bounds".into(), json!(bound_rows));
    }

    if json_mode {
        println!("{}", Value::Object(out));
        return Ok(0);
    }
    println!("ell = {l}   (n = {n})");
    println!("generic: yes");
    println!(
        "dominating indices: {{{}}}",
        l.dominating_indices()
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    println!(
        "a = ({})",
        stats.a.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
    );
    println!("chamber key: {key}");
    for &dd in &dims {
        let info = dim_and_connectivity(n, dd);
        let sphere = info
            .sphere_dimension
            .map(|s| format!(", sphere of dimension {s}"))
            .unwrap_or_default();
        println!(
            "M_{dd}: dimension {}, {}-connected{sphere}",
            info.dimension, info.connectivity
        );
    }
    println!("P3 = {}", poly_text(&p3, format));
    if empty {
        println!("moduli space: empty (a_0 = 0); P5, chi, mu undefined");
        return Ok(0);
    }
    let mu = l.morse_numbers()?;
    println!(
        "mu = ({})",
        mu.mu.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
    );
    match p5_closed(&l) {
        Ok(p5) => println!("P5 = {}", poly_text(&p5, format)),
        Err(_) => println!("P5 = (needs n >= 5)"),
    }
    match chi_m4(&l) {
        Ok(chi) => println!("chi(M4) = {chi}"),
        Err(_) => println!("chi(M4) = (needs n >= 5)"),
    }
    match chi_m6(&l) {
        Ok(chi) => println!("chi(M6) = {chi}"),
        Err(_) => println!("chi(M6) = (needs n >= 7)"),
    }
    for dd in [4i64, 6] {
        if let Ok(bounds) = betti_bounds(&l, dd) {
            for b in bounds {
                let diff = b
                    .exact_difference
                    .as_ref()
                    .map(|v| format!("  (b_{} - b_{} = {v})", b.degree, b.degree + 1))
                    .unwrap_or_default();
                println!(
                    "M_{dd}: {} <= b_{} <= {}{diff}",
                    b.lower, b.degree, b.upper
                );
            }
        }
    }
    Ok(0)
}

fn cmd_pair(d: i64, k: i64, format: Format) -> Result<i32, Error> {
    if d < 4 {
        return Err(Error::OutOfRange {
            what: "d",
            value: d,
            min: 4,
            max: i64::MAX,
        });
    }
    if k < 0 {
        return Err(Error::OutOfRange {
            what: "k",
            value: k,
            min: 0,
            max: i64::MAX,
        });
    }
    let p = pair_poincare(d, k);
    let chi = p.eval_minus_one();
    if format == Format::Json {
        let out = json!({
            "d": d,
            "k": k,
            "pair_poincare": render::json(&p),
            "chi": bigint_value(&chi),
        });
        println!("{out}");
    } else {
        println!("{}", poly_text(&p, format));
        println!("chi = {chi}");
    }
    Ok(0)
}

fn cmd_complex(m: usize, j: i64, force: bool, format: Format) -> Result<i32, Error> {
    if !force && (m > 6 || j > 10) {
        return Err(Error::OutOfRange {
            what: if m > 6 { "m" } else { "j" },
            value: if m > 6 { m as i64 } else { j },
            min: 0,
            max: if m > 6 { 6 } else { 10 },
        });
    }
    if j < 1 {
        return Err(Error::OutOfRange {
            what: "j",
            value: j,
            min: 1,
            max: i64::MAX,
        });
    }
    let complex = build_e(m, j);
    let h = homology(&complex);
    if format == Format::Json {
        let generators: Vec<Value> = (0..=complex.top_degree().max(0))
            .map(|q| json!({ "degree": q, "labels": complex.generators(q as usize) }))
            .collect();
        let boundaries: Vec<Value> = (0..=complex.top_degree().max(0))
            .map(|q| {
                let triplets: Vec<Value> = complex
                    .boundary(q as usize)
                    .map(|mat| {
                        mat.triplets()
                            .into_iter()
                            .map(|(r, c, v)| json!([r, c, bigint_value(&v)]))
                            .collect()
                    })
                    .unwrap_or_default();
                json!({ "degree": q, "triplets": triplets })
            })
            .collect();
        let homology_rows: Vec<Value> = h
            .groups
            .iter()
            .map(|(q, g)| {
                json!({
                    "degree": q,
                    "free_rank": g.free_rank,
                    "torsion": g.torsion.iter().map(bigint_value).collect::<Vec<_>>(),
                })
            })
            .collect();
        println!(
            "{}",
            json!({
                "m": m,
                "j": j,
                "generators": generators,
                "boundaries": boundaries,
                "homology": homology_rows,
            })
        );
        return Ok(0);
    }
    println!("E({m}, {j}): {} generators", complex.total_generators());
    for q in 0..=complex.top_degree().max(0) {
        let labels = complex.generators(q as usize);
        if labels.is_empty() {
            continue;
        }
        println!("degree {q}: {}", labels.join(" "));
    }
    for q in 1..=complex.top_degree().max(0) {
        if let Some(mat) = complex.boundary(q as usize) {
            let triplets = mat.triplets();
            if triplets.is_empty() {
                continue;
            }
            let body = triplets
                .iter()
                .map(|(r, c, v)| format!("({r},{c})={v}"))
                .collect::<Vec<_>>()
                .join(" ");
            println!("boundary {q} -> {}: {body}", q - 1);
        }
    }
    println!("homology: {h}");
    Ok(0)
}

fn chamber_profile(c: &Chamber, format: Format) -> Value {
    let l = &c.witness;
    let stats = l.short_set_stats().expect("generic witness");
    let mut row = serde_json::Map::new();
    row.insert("key".into(), serde_json::to_value(&c.key).unwrap());
    row.insert("witness".into(), json!(l.to_string()));
    row.insert("a".into(), json!(stats.a));
    let p3 = p3_closed(l).expect("generic");
    row.insert("p3".into(), poly_value(&p3, format));
    if stats.a0_nonempty && l.n() >= 5 {
        row.insert(
            "p5".into(),
            poly_value(&p5_closed(l).expect("nonempty"), format),
        );
        row.insert(
            "chi_m4".into(),
            bigint_value(&chi_m4(l).expect("nonempty")),
        );
    }
    if stats.a0_nonempty && l.n() >= 7 {
        row.insert(
            "chi_m6".into(),
            bigint_value(&chi_m6(l).expect("nonempty")),
        );
    }
    Value::Object(row)
}

fn cmd_chambers(n: usize, nonempty: bool, force: bool, format: Format) -> Result<i32, Error> {
    use rayon::prelude::*;
    let chambers = if force {
        enumerate_chambers_unbounded(n, nonempty)
    } else {
        enumerate_chambers(n, nonempty)?
    };
    let profiles: Vec<Value> = chambers
        .par_iter()
        .map(|c| chamber_profile(c, format))
        .collect();
    if format == Format::Json {
        println!(
            "{}",
            json!({ "n": n, "nonempty": nonempty, "count": chambers.len(), "chambers": profiles })
        );
        return Ok(0);
    }
    for (c, profile) in chambers.iter().zip(&profiles) {
        let a = profile["a"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        let mut line = format!("{}  witness {}  a = ({a})", c.key, c.witness);
        if let Some(p3) = profile["p3"].as_str() {
            line.push_str(&format!("  P3 = {p3}"));
        }
        if let Some(p5) = profile.get("p5").and_then(|v| v.as_str()) {
            line.push_str(&format!("  P5 = {p5}"));
        }
        if let Some(chi) = profile.get("chi_m4") {
            line.push_str(&format!("  chi4 = {chi}"));
        }
        if let Some(chi) = profile.get("chi_m6") {
            line.push_str(&format!("  chi6 = {chi}"));
        }
        println!("{line}");
    }
    println!("total: {} chambers (n = {n}, nonempty = {nonempty})", chambers.len());
    Ok(0)
}

fn cmd_verify(scope: Scope, seed: u64, format: Format) -> i32 {
    let reports = run_suite(scope, seed);
    let failures = reports.iter().filter(|r| !r.pass).count();
    if format == Format::Json {
        for r in &reports {
            println!("{}", serde_json::to_string(r).unwrap());
        }
        println!(
            "{}",
            json!({ "summary": { "total": reports.len(), "failures": failures } })
        );
    } else {
        for r in &reports {
            print_report(r);
        }
        println!("{} checks, {} failures", reports.len(), failures);
    }
    i32::from(failures > 0)
}

fn print_report(r: &CheckReport) {
    if r.pass {
        println!("PASS {} [{}] {}", r.check, r.inputs, r.actual);
    } else {
        println!(
            "FAIL {} [{}] expected {} got {} ({})",
            r.check, r.inputs, r.expected, r.actual, r.details
        );
    }
}
