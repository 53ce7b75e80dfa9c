//! Command-line surface: verification sweeps, invariant computation,
//! oracle comparison, benchmarking of the structured path, and catalog
//! listing. The binary is a thin wrapper over [`run`]; the examples
//! directory is the richer tour of the library itself.

use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::braid::{builtin_catalog, parse_braid, random_word, BraidWord, LinkSpec};
use crate::error::{Error, Result};
use crate::gyb::{
    check_far_commutativity, check_gybe, check_enhancement, min_poly_check, r_nu, rep_matrix,
    spectrum_check, EgybOperator,
};
use crate::invariant::{markov_trace, normalized_invariant, Scheme};
use crate::linalg::{kron_pow, ToleranceConfig, C64};
use crate::skein::compare_invariants;
use crate::so_n2::{build_gyb, category_data, compare_with_rnu, Channel};

#[derive(Parser)]
#[command(name = "gyblink", version, about = "Generalized Yang-Baxter link invariants from SO(N)_2 data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Run the operator-level verification suite for each N.
    Verify {
        /// N values: "5", "3,5,7", or "3..13" (odd values only)
        #[arg(long = "N", default_value = "3..13")]
        n: String,
        /// absolute tolerance (overrides GYBLINK_TOL)
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value = "human")]
        format: String,
    },
    /// Compute the invariant of a catalog link or explicit braid word.
    Invariant {
        /// catalog link name (alternative to --word)
        link: Option<String>,
        #[arg(long = "N", default_value = "5")]
        n: String,
        /// braid word, e.g. "1 -2 1 -2"
        #[arg(long)]
        word: Option<String>,
        /// normalization: raw, framed, section2, remark54
        #[arg(long, default_value = "remark54")]
        scheme: String,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value = "human")]
        format: String,
    },
    /// Compare invariants against the Dubrovnik oracle.
    Compare {
        #[arg(long = "N", default_value = "3,5,7")]
        n: String,
        /// comma-separated catalog names (default: whole catalog)
        #[arg(long)]
        links: Option<String>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value = "human")]
        format: String,
    },
    /// Time the structured trace path against the dense one.
    Bench {
        /// strand counts: "3..10" etc.
        #[arg(long = "n", default_value = "3..10")]
        n: String,
        #[arg(long = "N", default_value = "5")]
        big_n: String,
        #[arg(long, default_value = "20")]
        length: usize,
        #[arg(long, default_value = "7")]
        seed: u64,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// List the built-in link catalog.
    Catalog {
        #[arg(long, default_value = "human")]
        format: String,
    },
}

/// Parses an N specification: single value, comma list, or inclusive
/// range "a..b". With `odd` set, every value must be odd and >= 3.
pub fn parse_n_spec(spec: &str, odd: bool) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo: i64 = lo.trim().parse().map_err(|_| Error::Parse(format!("bad range start: {spec:?}")))?;
        let hi: i64 = hi.trim().parse().map_err(|_| Error::Parse(format!("bad range end: {spec:?}")))?;
        if lo > hi {
            return Err(Error::Parse(format!("descending range: {spec:?}")));
        }
        let step = if odd { 2 } else { 1 };
        let mut v = lo;
        while v <= hi {
            out.push(v);
            v += step;
        }
    } else {
        for part in spec.split(',') {
            out.push(part.trim().parse().map_err(|_| Error::Parse(format!("bad N value: {part:?}")))?);
        }
    }
    if odd {
        for &v in &out {
            if v < 3 || v % 2 == 0 {
                return Err(Error::InvalidN(v));
            }
        }
    }
    Ok(out)
}

fn tolerance(flag: Option<f64>) -> Result<ToleranceConfig> {
    let abs = match flag {
        Some(v) => v,
        None => match std::env::var("GYBLINK_TOL") {
            Ok(s) => s.parse().map_err(|_| Error::Parse(format!("bad GYBLINK_TOL: {s:?}")))?,
            Err(_) => 1e-10,
        },
    };
    let t = ToleranceConfig::abs(abs);
    t.validate()?;
    Ok(t)
}

fn structured(format: &str) -> Result<bool> {
    match format {
        "human" => Ok(false),
        "structured" => Ok(true),
        other => Err(Error::Parse(format!("unknown format: {other:?} (want human or structured)"))),
    }
}

fn fmt_c(v: C64) -> String {
    format!("{:+.12e}{:+.12e}i", v.re, v.im)
}

/// Executes a parsed command; Ok(true) means every check passed.
pub fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify { n, tol, format } => cmd_verify(&n, tolerance(tol)?, structured(&format)?),
        Command::Invariant { link, n, word, scheme, tol, format } => {
            cmd_invariant(link.as_deref(), &n, word.as_deref(), &scheme, tolerance(tol)?, structured(&format)?)
        }
        Command::Compare { n, links, tol, format } => {
            cmd_compare(&n, links.as_deref(), tolerance(tol)?, structured(&format)?)
        }
        Command::Bench { n, big_n, length, seed, tol } => {
            cmd_bench(&n, &big_n, length, seed, tolerance(tol)?)
        }
        Command::Catalog { format } => cmd_catalog(structured(&format)?),
    }
}

fn cmd_verify(n_spec: &str, tol: ToleranceConfig, structured_out: bool) -> Result<bool> {
    let mut all_pass = true;
    for n in parse_n_spec(n_spec, true)? {
        let mut reports = Vec::new();
        for nu in [1i8, -1] {
            let r = r_nu(n, nu)?;
            let mut gybe = check_gybe(&r, &tol)?;
            gybe.name = format!("gYBE(nu={nu:+})");
            let mut far = check_far_commutativity(&r, &tol)?;
            far.name = format!("far-comm(nu={nu:+})");
            reports.push(gybe);
            reports.push(far);
        }
        let built = build_gyb(n)?;
        let s = EgybOperator::from_channel_sum(built.clone())?;
        reports.push(check_enhancement(&s, 4, &tol)?);
        reports.push(min_poly_check(n, &ToleranceConfig::abs(tol.abs_tol.min(1e-12)))?);
        let data = category_data(n)?;
        let mut eigs: Vec<C64> = [Channel::Unit, Channel::Z, Channel::X2]
            .map(|c| data.r_symbol(c))
            .to_vec();
        if n == 3 {
            eigs = eigs.iter().map(|z| z.conj()).collect();
        }
        let (spec_report, _) = spectrum_check(&built, &eigs, &tol)?;
        reports.push(spec_report);
        let rnu = compare_with_rnu(n, 1e-12)?;
        let synth = crate::gyb::CheckReport::new("synthesis-vs-closed-form", rnu.deviation, 1e-12, format!("sign {}, nu {:+}", if rnu.sign > 0 { "+" } else { "-" }, rnu.nu));
        reports.push(synth);

        for rep in &reports {
            all_pass &= rep.pass;
            if structured_out {
                println!(
                    "record=verify N={} check={} residual={:.6e} pass={}",
                    n, rep.name, rep.residual, rep.pass
                );
            } else {
                println!("N={n:<3} {rep}");
            }
        }
    }
    Ok(all_pass)
}

fn resolve_word(link: Option<&str>, word: Option<&str>) -> Result<(String, BraidWord)> {
    match (link, word) {
        (Some(name), None) => {
            let catalog = builtin_catalog();
            let spec = crate::braid::find_link(&catalog, name)?;
            Ok((spec.name.clone(), spec.word.clone()))
        }
        (None, Some(text)) => Ok(("word".to_string(), parse_braid(text, None)?)),
        _ => Err(Error::Parse("give exactly one of a link name or --word".into())),
    }
}

fn cmd_invariant(
    link: Option<&str>,
    n_spec: &str,
    word: Option<&str>,
    scheme: &str,
    tol: ToleranceConfig,
    structured_out: bool,
) -> Result<bool> {
    let scheme: Scheme = scheme.parse()?;
    let (name, w) = resolve_word(link, word)?;
    for n in parse_n_spec(n_spec, true)? {
        let s = EgybOperator::from_channel_sum(build_gyb(n)?)?;
        let chosen = normalized_invariant(&s, &w, scheme, &tol)?;
        let raw = normalized_invariant(&s, &w, Scheme::Raw, &tol)?;
        let framed = normalized_invariant(&s, &w, Scheme::Framed, &tol)?;
        if structured_out {
            println!(
                "record=invariant N={} link={} word={} strands={} writhe={} scheme={} value={} raw={} framed={}",
                n,
                name,
                w.format().replace(' ', ","),
                w.strands(),
                w.writhe(),
                scheme,
                fmt_c(chosen.value),
                fmt_c(raw.value),
                fmt_c(framed.value)
            );
        } else {
            println!("N={n} {name}: {chosen}");
            println!("        raw={} framed={}", fmt_c(raw.value), fmt_c(framed.value));
        }
    }
    Ok(true)
}

fn cmd_compare(
    n_spec: &str,
    links: Option<&str>,
    tol: ToleranceConfig,
    structured_out: bool,
) -> Result<bool> {
    let mut catalog = builtin_catalog();
    if let Some(names) = links {
        let mut chosen = Vec::new();
        for name in names.split(',') {
            chosen.push(crate::braid::find_link(&catalog, name.trim())?.clone());
        }
        catalog = chosen;
    }
    catalog.sort_by(|a, b| a.name.cmp(&b.name));
    let mut all_pass = true;
    for n in parse_n_spec(n_spec, true)? {
        let rows = compare_invariants(n, &catalog, &tol)?;
        for row in rows {
            let pass = row.matched_sign.is_some();
            all_pass &= pass;
            if structured_out {
                println!(
                    "record=compare N={} link={} value={} oracle_plus={} oracle_minus={} matched_sign={} deviation={:.6e} pass={}",
                    n,
                    row.link,
                    fmt_c(row.invariant),
                    fmt_c(row.oracle[0]),
                    fmt_c(row.oracle[1]),
                    row.matched_sign.map_or("none".to_string(), |s| format!("{s:+}")),
                    row.deviation,
                    pass
                );
            } else {
                println!("{row}");
            }
        }
    }
    Ok(all_pass)
}

/// Dense trace is only attempted while the representation matrix fits
/// comfortably in memory.
const DENSE_STRAND_LIMIT: usize = 10;

fn cmd_bench(n_spec: &str, big_n: &str, length: usize, seed: u64, tol: ToleranceConfig) -> Result<bool> {
    let n_values = parse_n_spec(big_n, true)?;
    let big = *n_values.first().ok_or_else(|| Error::Parse("empty N spec".into()))?;
    let s = EgybOperator::from_channel_sum(build_gyb(big)?)?;
    let mut all_pass = true;
    for n in parse_n_spec(n_spec, false)? {
        let n = n as usize;
        if n < 2 {
            return Err(Error::Parse("bench needs n >= 2".into()));
        }
        let w = random_word(n, length, seed)?;
        let t0 = Instant::now();
        let fast = markov_trace(&s, &w, &tol)?;
        let fast_ms = t0.elapsed().as_secs_f64() * 1e3;
        if n <= DENSE_STRAND_LIMIT {
            let t1 = Instant::now();
            let dense = rep_matrix(&s.op, &w)?
                .mul(&kron_pow(&s.enh.mu, n + 1))?
                .trace();
            let dense_ms = t1.elapsed().as_secs_f64() * 1e3;
            let dev = (fast - dense).norm();
            let pass = dev < 1e-12 * fast.norm().max(1.0);
            all_pass &= pass;
            println!(
                "n={n:<3} dim={:<6} structured={fast_ms:>10.3}ms dense={dense_ms:>10.3}ms deviation={dev:.3e} agree={pass}",
                1usize << (n + 1)
            );
        } else {
            println!(
                "n={n:<3} dim={:<6} structured={fast_ms:>10.3}ms dense=skipped(memory guard)",
                1usize << (n + 1)
            );
        }
    }
    Ok(all_pass)
}

fn cmd_catalog(structured_out: bool) -> Result<bool> {
    let mut catalog = builtin_catalog();
    catalog.sort_by(|a, b| a.name.cmp(&b.name));
    for LinkSpec { name, word } in catalog {
        if structured_out {
            println!(
                "record=catalog link={} strands={} word={}",
                name,
                word.strands(),
                word.format().replace(' ', ",")
            );
        } else {
            println!("{name:<10} strands={} word=[{}]", word.strands(), word.format());
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_spec_parsing() {
        assert_eq!(parse_n_spec("5", true).unwrap(), vec![5]);
        assert_eq!(parse_n_spec("3,5,7", true).unwrap(), vec![3, 5, 7]);
        assert_eq!(parse_n_spec("3..13", true).unwrap(), vec![3, 5, 7, 9, 11, 13]);
        assert_eq!(parse_n_spec("3..6", false).unwrap(), vec![3, 4, 5, 6]);
        assert!(parse_n_spec("4", true).is_err());
        assert!(parse_n_spec("1", true).is_err());
        assert!(parse_n_spec("7..3", true).is_err());
        assert!(parse_n_spec("x", true).is_err());
    }

    #[test]
    fn verify_pass_and_reject() {
        assert!(cmd_verify("5", ToleranceConfig::abs(1e-10), true).unwrap());
        assert!(parse_n_spec("4", true).is_err());
    }

    #[test]
    fn invariant_command_paths() {
        let tol = ToleranceConfig::abs(1e-10);
        assert!(cmd_invariant(Some("trefoil"), "5", None, "remark54", tol.clone(), true).unwrap());
        assert!(cmd_invariant(None, "7", Some("1 -2 1 -2"), "section2", tol.clone(), true).unwrap());
        assert!(cmd_invariant(Some("nosuch"), "5", None, "remark54", tol.clone(), true).is_err());
        assert!(cmd_invariant(Some("hopf"), "5", Some("1"), "remark54", tol, true).is_err());
    }

    #[test]
    fn compare_command() {
        let tol = ToleranceConfig::abs(1e-10);
        assert!(cmd_compare("5", Some("trefoil,hopf"), tol.clone(), true).unwrap());
        assert!(cmd_compare("5", Some("nosuch"), tol, true).is_err());
    }

    #[test]
    fn bench_small() {
        assert!(cmd_bench("3..4", "5", 6, 1, ToleranceConfig::abs(1e-10)).unwrap());
    }

    #[test]
    fn catalog_command() {
        assert!(cmd_catalog(true).unwrap());
    }
}
