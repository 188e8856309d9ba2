//! Command-line front end. [`run_command`] does all the work so it can be
//! driven from tests without spawning a process.
//!
//! Exit codes: 0 success, 1 domain error (inadmissible type, not a Catanese
//! tuple, multiple below 5, unexpected report pattern), 2 usage error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{self, CatalogError, CatalogRecord, CatalogWriter, InvariantsReport, Payload};
use crate::cover::{self, CoverError, CoverType, RawCoverType};
use crate::discriminant::{self, DiscriminantError, DiscriminantProfile};
use crate::report;
use crate::search::{self, CataneseTuple, SearchConfig, SearchError};
use crate::topology::{self, TopologyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "bidouble",
    version,
    about = "Invariants of bidouble covers, Catanese tuples and Zariski certificates"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Omit created_at from catalog records.
    #[arg(long, global = true)]
    no_timestamp: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct OutArg {
    /// Append results to this JSONL catalog.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Derived parameters and surface invariants of one cover type.
    Invariants {
        /// Cover type as a,b,m2,n2.
        #[arg(long = "type", value_parser = parse_type)]
        cover: RawCoverType,
        #[command(flatten)]
        out: OutArg,
    },
    /// Homeomorphism test and divisibility obstruction for two types.
    CheckPair {
        #[arg(long = "type", value_parser = parse_type, num_args = 1, required = true)]
        types: Vec<RawCoverType>,
    },
    /// Decide whether the given types form a Catanese tuple.
    CheckTuple {
        #[arg(long = "type", value_parser = parse_type, num_args = 1, required = true)]
        types: Vec<RawCoverType>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Discriminant-curve profiles for m-canonical projections of one type.
    Discriminant {
        #[arg(long = "type", value_parser = parse_type)]
        cover: RawCoverType,
        /// Canonical multiple, at least 5. Repeatable.
        #[arg(long = "m", num_args = 1, required = true)]
        mults: Vec<i64>,
    },
    /// Enumerate admissible types up to a bound and extract Catanese k-tuples.
    Search {
        #[arg(long)]
        bound: i64,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        shards: usize,
        #[arg(long)]
        max_results: Option<usize>,
        /// Per-bucket tuple limit.
        #[arg(long, default_value_t = search::DEFAULT_TUPLE_CAP)]
        tuple_cap: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Build a Zariski tuple certificate.
    Certify {
        #[arg(long = "type", value_parser = parse_type, num_args = 1, required = true)]
        types: Vec<RawCoverType>,
        #[arg(long = "m", num_args = 1)]
        mults: Vec<i64>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Compare computed values with the published (16,22,52,4)/(28,10,28,10) example.
    VerifyPaperExample {
        #[arg(long = "m", num_args = 1)]
        mults: Vec<i64>,
    },
}

fn parse_type(s: &str) -> Result<RawCoverType, String> {
    let fields: Vec<&str> = s.split(',').map(str::trim).collect();
    if fields.len() != 4 {
        return Err(format!(
            "expected four comma-separated integers a,b,m2,n2, got {s:?}"
        ));
    }
    let mut v = [0i64; 4];
    for (slot, f) in v.iter_mut().zip(&fields) {
        *slot = f.parse().map_err(|_| format!("{f:?} is not an integer"))?;
    }
    Ok(RawCoverType {
        a: v[0],
        b: v[1],
        m2: v[2],
        n2: v[3],
    })
}

/// A failure that maps to exit code 1, with a JSON payload for stdout.
#[derive(Debug)]
struct DomainError {
    payload: Value,
    message: String,
}

impl DomainError {
    fn new(kind: &str, message: String, details: Value) -> Self {
        let mut payload = json!({ "error": kind, "message": message });
        if let (Value::Object(map), Value::Object(extra)) = (&mut payload, details) {
            map.extend(extra);
        }
        DomainError { payload, message }
    }
}

impl From<CoverError> for DomainError {
    fn from(e: CoverError) -> Self {
        let message = e.to_string();
        match e {
            CoverError::ConstraintViolation(cs) => DomainError::new(
                "ConstraintViolation",
                message,
                json!({ "violations": cs.iter().map(ToString::to_string).collect::<Vec<_>>() }),
            ),
            CoverError::OutOfRange(fields) => {
                DomainError::new("OutOfRange", message, json!({ "fields": fields }))
            }
            CoverError::InvalidCap(_) => DomainError::new("InvalidCap", message, json!({})),
        }
    }
}

impl From<TopologyError> for DomainError {
    fn from(e: TopologyError) -> Self {
        let message = e.to_string();
        match e {
            TopologyError::InvalidMember { index, source } => {
                let inner = DomainError::from(source);
                DomainError::new(
                    "InvalidMember",
                    message,
                    json!({ "index": index, "cause": inner.payload }),
                )
            }
            TopologyError::NotComparable(..) => {
                DomainError::new("NotComparable", message, json!({}))
            }
            TopologyError::TooFewMembers(n) => {
                DomainError::new("TooFewMembers", message, json!({ "count": n }))
            }
        }
    }
}

impl From<DiscriminantError> for DomainError {
    fn from(e: DiscriminantError) -> Self {
        let message = e.to_string();
        match e {
            DiscriminantError::MultTooSmall(m) => {
                DomainError::new("MultTooSmall", message, json!({ "m": m }))
            }
            DiscriminantError::MultTooLarge(m) => {
                DomainError::new("MultTooLarge", message, json!({ "m": m }))
            }
            DiscriminantError::NegativeNodes(n) => {
                DomainError::new("NegativeNodes", message, json!({ "nodes": n.to_string() }))
            }
            DiscriminantError::NotCatanese(failures) => {
                DomainError::new("NotCatanese", message, json!({ "failures": failures }))
            }
            DiscriminantError::Topology(t) => t.into(),
        }
    }
}

impl From<SearchError> for DomainError {
    fn from(e: SearchError) -> Self {
        let kind = match e {
            SearchError::BoundTooLarge(_) => "BoundTooLarge",
            SearchError::BoundTooSmall(_) => "BoundTooSmall",
            SearchError::KTooSmall(_) => "KTooSmall",
            SearchError::NoShards => "NoShards",
        };
        DomainError::new(kind, e.to_string(), json!({}))
    }
}

impl From<CatalogError> for DomainError {
    fn from(e: CatalogError) -> Self {
        DomainError::new("CatalogError", e.to_string(), json!({}))
    }
}

/// What a command produced: a JSON document and its CSV rendering.
struct Output {
    json: Value,
    csv: Vec<Vec<String>>,
    /// Exit 1 even though output was produced.
    failed: bool,
}

impl Output {
    fn ok(json: Value, csv: Vec<Vec<String>>) -> Self {
        Output {
            json,
            csv,
            failed: false,
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("result types serialize infallibly")
}

fn validate(raw: &RawCoverType) -> Result<CoverType, CoverError> {
    cover::validate_type(raw.a, raw.b, raw.m2, raw.n2)
}

fn validate_all(raws: &[RawCoverType]) -> Result<Vec<CoverType>, TopologyError> {
    raws.iter()
        .enumerate()
        .map(|(index, r)| {
            validate(r).map_err(|source| TopologyError::InvalidMember { index, source })
        })
        .collect()
}

fn type_cell(t: &CoverType) -> String {
    let (a, b, m2, n2) = t.as_tuple();
    format!("{a},{b},{m2},{n2}")
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

fn row(cells: &[&dyn ToString]) -> Vec<String> {
    cells.iter().map(|c| c.to_string()).collect()
}

fn profile_rows(profiles: &[DiscriminantProfile]) -> Vec<Vec<String>> {
    let mut rows = vec![row(&[
        &"mult",
        &"deg_f",
        &"deg_b",
        &"genus",
        &"cusps",
        &"nodes",
        &"ram_mult",
        &"half_deg",
    ])];
    rows.extend(profiles.iter().map(|p| {
        row(&[
            &p.mult,
            &p.deg_f,
            &p.deg_b,
            &p.genus,
            &p.cusps,
            &p.nodes,
            &p.ram_mult,
            &p.half_deg,
        ])
    }));
    rows
}

fn tuple_rows(tuples: &[CataneseTuple]) -> Vec<Vec<String>> {
    let mut rows = vec![row(&[&"kk", &"chi", &"members", &"indices"])];
    rows.extend(tuples.iter().map(|t| {
        let members: Vec<String> = t.members.iter().map(type_cell).collect();
        row(&[&t.key.kk, &t.key.chi, &members.join(";"), &join(&t.indices)])
    }));
    rows
}

fn append_records(
    out: &Option<PathBuf>,
    payloads: impl IntoIterator<Item = Payload>,
    timestamp: bool,
) -> Result<(), CatalogError> {
    let Some(path) = out else { return Ok(()) };
    let mut writer = CatalogWriter::open(path)?;
    for payload in payloads {
        writer.append(&CatalogRecord::new(payload, timestamp))?;
    }
    writer.finish()
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<Output, DomainError> {
    let timestamp = !cli.no_timestamp;
    match &cli.command {
        Command::Invariants { cover, out } => {
            let t = validate(cover)?;
            let rep = InvariantsReport::new(&t);
            append_records(&out.out, [Payload::Invariants(rep.clone())], timestamp)?;
            let (p, i) = (rep.params, rep.invariants);
            let csv = vec![
                row(&[
                    &"a", &"b", &"m2", &"n2", &"u", &"v", &"w", &"z", &"kk", &"chi", &"euler",
                    &"sigma", &"b2", &"b_plus", &"b_minus", &"p_g", &"r",
                ]),
                row(&[
                    &t.a(),
                    &t.b(),
                    &t.m2(),
                    &t.n2(),
                    &p.u,
                    &p.v,
                    &p.w,
                    &p.z,
                    &i.kk,
                    &i.chi,
                    &i.euler,
                    &i.sigma,
                    &i.b2,
                    &i.b_plus,
                    &i.b_minus,
                    &i.p_g,
                    &i.r,
                ]),
            ];
            Ok(Output::ok(to_json(&rep), csv))
        }
        Command::CheckPair { types } => {
            if types.len() != 2 {
                return Err(DomainError::new(
                    "WrongArity",
                    format!("check-pair takes exactly 2 types, got {}", types.len()),
                    json!({}),
                ));
            }
            let ts = validate_all(types)?;
            let (i1, i2) = (
                cover::surface_invariants(&ts[0]),
                cover::surface_invariants(&ts[1]),
            );
            let homeomorphic = topology::are_homeomorphic(&i1, &i2);
            let diffeo = topology::diffeo_obstruction(&i1, &i2).ok();
            let json = json!({
                "types": ts,
                "keys": [topology::homeo_class_key(&i1), topology::homeo_class_key(&i2)],
                "indices": [i1.r, i2.r],
                "homeomorphic": homeomorphic,
                "diffeo": diffeo,
            });
            let diffeo_cell = diffeo.map(|d| d.to_string()).unwrap_or_default();
            let csv = vec![
                row(&[
                    &"type1",
                    &"type2",
                    &"kk1",
                    &"chi1",
                    &"kk2",
                    &"chi2",
                    &"r1",
                    &"r2",
                    &"homeomorphic",
                    &"diffeo",
                ]),
                row(&[
                    &type_cell(&ts[0]),
                    &type_cell(&ts[1]),
                    &i1.kk,
                    &i1.chi,
                    &i2.kk,
                    &i2.chi,
                    &i1.r,
                    &i2.r,
                    &homeomorphic,
                    &diffeo_cell,
                ]),
            ];
            Ok(Output::ok(json, csv))
        }
        Command::CheckTuple { types, out } => {
            let ts = validate_all(types)?;
            let verdict = topology::is_catanese_tuple(&ts)?;
            if let (true, Some(key)) = (verdict.is_catanese, verdict.shared_key) {
                let tuple = CataneseTuple {
                    key,
                    members: ts.iter().map(cover::canonicalize).collect(),
                    indices: verdict.indices.clone(),
                };
                append_records(&out.out, [Payload::Tuple(tuple)], timestamp)?;
            }
            let mut json = to_json(&verdict);
            json["types"] = to_json(&ts);
            let key_cells = verdict
                .shared_key
                .map(|k| (k.kk.to_string(), k.chi.to_string()))
                .unwrap_or_default();
            let members: Vec<String> = ts.iter().map(type_cell).collect();
            let csv = vec![
                row(&[
                    &"members",
                    &"is_catanese",
                    &"kk",
                    &"chi",
                    &"indices",
                    &"failures",
                ]),
                row(&[
                    &members.join(";"),
                    &verdict.is_catanese,
                    &key_cells.0,
                    &key_cells.1,
                    &join(&verdict.indices),
                    &verdict.failures.join(";"),
                ]),
            ];
            if !verdict.is_catanese {
                writeln!(err, "not a Catanese tuple: {}", verdict.failures.join("; ")).ok();
            }
            Ok(Output {
                json,
                csv,
                failed: !verdict.is_catanese,
            })
        }
        Command::Discriminant { cover, mults } => {
            let t = validate(cover)?;
            let inv = cover::surface_invariants(&t);
            let profiles = mults
                .iter()
                .map(|&m| discriminant::discriminant_profile(&inv, m))
                .collect::<Result<Vec<_>, _>>()?;
            let json = json!({
                "type": t,
                "key": topology::homeo_class_key(&inv),
                "profiles": profiles,
            });
            Ok(Output::ok(json, profile_rows(&profiles)))
        }
        Command::Search {
            bound,
            k,
            shards,
            max_results,
            tuple_cap,
            out,
        } => {
            let cfg = SearchConfig::new(*bound, *k)
                .with_shards(*shards)
                .with_max_results(*max_results)
                .with_tuple_cap(*tuple_cap);
            let result = search::search(&cfg)?;
            append_records(
                &out.out,
                result.tuples.iter().cloned().map(Payload::Tuple),
                timestamp,
            )?;
            writeln!(
                err,
                "enumerated {} canonical types in {} classes; {} tuples",
                result.types_enumerated,
                result.bucket_count,
                result.tuples.len()
            )
            .ok();
            let json = json!({
                "bound": cfg.bound,
                "k": cfg.k,
                "types_enumerated": result.types_enumerated,
                "bucket_count": result.bucket_count,
                "truncated_buckets": result.truncated_buckets,
                "truncated_results": result.truncated_results,
                "tuples": result.tuples,
            });
            Ok(Output::ok(json, tuple_rows(&result.tuples)))
        }
        Command::Certify { types, mults, out } => {
            let ts = validate_all(types)?;
            let cert = discriminant::zariski_certificate(&ts, mults)?;
            append_records(&out.out, [Payload::Certificate(cert.clone())], timestamp)?;
            let csv = profile_rows(&cert.profiles);
            Ok(Output::ok(to_json(&cert), csv))
        }
        Command::VerifyPaperExample { mults } => {
            let rep = report::verify_paper_example(mults)?;
            let mut csv = vec![row(&[
                &"field",
                &"paper_printed",
                &"computed",
                &"match",
                &"expected_match",
                &"note",
            ])];
            csv.extend(rep.entries.iter().map(|e| {
                row(&[
                    &e.field,
                    &e.paper_printed,
                    &e.computed,
                    &e.matches,
                    &e.expected_match,
                    &e.note,
                ])
            }));
            if !rep.as_expected {
                writeln!(
                    err,
                    "comparison pattern differs from the documented expectation"
                )
                .ok();
            }
            Ok(Output {
                json: to_json(&rep),
                csv,
                failed: !rep.as_expected,
            })
        }
    }
}

fn render_csv(rows: &[Vec<String>]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(r).expect("in-memory csv write");
    }
    w.into_inner().expect("in-memory csv flush")
}

/// Run one invocation. `argv[0]` is the program name.
pub fn run_command<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                write!(out, "{}", e.render()).ok();
                return 0;
            }
            write!(err, "{}", e.render()).ok();
            // List the valid flags of the subcommand that was attempted.
            let mut cmd = Cli::command();
            let sub = argv
                .get(1)
                .and_then(|s| s.to_str())
                .and_then(|name| cmd.find_subcommand_mut(name).map(|c| c.render_help()));
            let help = sub.unwrap_or_else(|| Cli::command().render_help());
            write!(err, "\n{help}").ok();
            return 2;
        }
    };

    let format = cli.format;
    match execute(&cli, err) {
        Ok(output) => {
            let bytes = match format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&output.json).expect("json");
                    s.push('\n');
                    s.into_bytes()
                }
                Format::Csv => render_csv(&output.csv),
            };
            if out.write_all(&bytes).is_err() {
                return 1;
            }
            i32::from(output.failed)
        }
        Err(e) => {
            writeln!(err, "error: {}", e.message).ok();
            let mut s = serde_json::to_string_pretty(&e.payload).expect("json");
            s.push('\n');
            out.write_all(s.as_bytes()).ok();
            1
        }
    }
}

/// Read a catalog and re-check every tuple and certificate in it.
pub fn reverify_catalog(path: &std::path::Path) -> Result<usize, String> {
    let records = catalog::read_catalog(path).map_err(|e| e.to_string())?;
    for (i, rec) in records.iter().enumerate() {
        match &rec.payload {
            Payload::Tuple(t) => {
                let v = topology::is_catanese_tuple(&t.members).map_err(|e| e.to_string())?;
                if !v.is_catanese || v.shared_key != Some(t.key) || v.indices != t.indices {
                    return Err(format!("record {}: tuple does not re-verify", i + 1));
                }
            }
            Payload::Certificate(c) => {
                c.verify().map_err(|e| format!("record {}: {e}", i + 1))?;
            }
            Payload::Invariants(r) => {
                if *r != InvariantsReport::new(&r.cover) {
                    return Err(format!("record {}: invariants do not re-verify", i + 1));
                }
            }
        }
    }
    Ok(records.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("bidouble").chain(args.iter().copied());
        let code = run_command(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn invariants_json() {
        let (code, out, _) = run(&["invariants", "--type", "16,22,52,4"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["invariants"]["kk"], 10368);
        assert_eq!(v["invariants"]["r"], 18);
        assert_eq!(v["type"]["m2"], 52);
    }

    #[test]
    fn invariants_violation() {
        let (code, out, err) = run(&["invariants", "--type", "16,22,52,5"]);
        assert_eq!(code, 1);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["error"], "ConstraintViolation");
        assert_eq!(v["violations"], json!(["a = n2 (mod 2)"]));
        assert!(err.contains("constraint violation"));
    }

    #[test]
    fn invariants_csv() {
        let (code, out, _) = run(&["invariants", "--type", "7,3,7,3", "--format", "csv"]);
        assert_eq!(code, 0);
        let mut lines = out.lines();
        assert_eq!(
            lines.next().unwrap(),
            "a,b,m2,n2,u,v,w,z,kk,chi,euler,sigma,b2,b_plus,b_minus,p_g,r"
        );
        assert_eq!(
            lines.next().unwrap(),
            "7,3,7,3,8,8,4,4,512,106,760,-336,758,211,547,105,8"
        );
    }

    #[test]
    fn usage_errors_exit_two() {
        let (code, _, err) = run(&["invariants", "--type", "16,22,52"]);
        assert_eq!(code, 2);
        assert!(err.contains("--type"));
        let (code, _, err) = run(&["frobnicate"]);
        assert_eq!(code, 2);
        assert!(err.contains("verify-paper-example"));
        let (code, _, _) = run(&["search"]);
        assert_eq!(code, 2);
        let (code, out, _) = run(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("certify"));
    }

    #[test]
    fn check_pair() {
        let (code, out, _) = run(&[
            "check-pair",
            "--type",
            "16,22,52,4",
            "--type",
            "28,10,28,10",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["homeomorphic"], true);
        assert_eq!(v["diffeo"], "NOT_DIFFEOMORPHIC");
        let (_, out, _) = run(&["check-pair", "--type", "16,22,52,4", "--type", "7,3,7,3"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["homeomorphic"], false);
        assert_eq!(v["diffeo"], Value::Null);
        let (code, _, _) = run(&["check-pair", "--type", "7,3,7,3"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn check_tuple_exit_codes() {
        let (code, out, _) = run(&[
            "check-tuple",
            "--type",
            "16,22,52,4",
            "--type",
            "28,10,28,10",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["is_catanese"], true);
        assert_eq!(v["indices"], json!([18, 36]));
        let (code, out, _) = run(&["check-tuple", "--type", "7,3,7,3", "--type", "9,3,9,3"]);
        assert_eq!(code, 1);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["is_catanese"], false);
        let (code, out, _) = run(&["check-tuple", "--type", "7,3,7,3", "--type", "9,3,9,4"]);
        assert_eq!(code, 1);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["error"], "InvalidMember");
        assert_eq!(v["index"], 1);
    }

    #[test]
    fn discriminant_command() {
        let (code, out, _) = run(&["discriminant", "--type", "16,22,52,4", "--m", "5"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["profiles"][0]["deg_b"], "829440");
        assert_eq!(v["profiles"][0]["nodes"], "343979116800");
        let (code, out, _) = run(&["discriminant", "--type", "16,22,52,4", "--m", "4"]);
        assert_eq!(code, 1);
        assert!(out.contains("MultTooSmall"));
    }

    #[test]
    fn certify_command() {
        let (code, out, _) = run(&[
            "certify",
            "--type",
            "16,22,52,4",
            "--type",
            "28,10,28,10",
            "--m",
            "5",
            "--m",
            "6",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["indices"], json!([18, 36]));
        assert_eq!(v["profiles"].as_array().unwrap().len(), 2);
        let (code, out, _) = run(&[
            "certify", "--type", "7,3,7,3", "--type", "9,3,9,3", "--m", "5",
        ]);
        assert_eq!(code, 1);
        assert!(out.contains("NotCatanese"));
    }

    #[test]
    fn verify_paper_example_command() {
        let (code, out, _) = run(&["verify-paper-example", "--m", "5"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["as_expected"], true);
        let (code, out, _) = run(&["verify-paper-example", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 5);
    }

    #[test]
    fn search_writes_catalog() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cat.jsonl");
        let p = path.to_str().unwrap();
        let (code, out, _) = run(&[
            "search",
            "--bound",
            "40",
            "--k",
            "2",
            "--out",
            p,
            "--no-timestamp",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        let n = v["tuples"].as_array().unwrap().len();
        assert!(n > 0);
        assert_eq!(reverify_catalog(&path).unwrap(), n);
        assert!(!std::fs::read_to_string(&path)
            .unwrap()
            .contains("created_at"));
    }

    #[test]
    fn output_is_deterministic() {
        let args = ["search", "--bound", "30", "--k", "2", "--shards", "3"];
        assert_eq!(run(&args), run(&args));
        let (_, a, _) = run(&["search", "--bound", "30", "--k", "2"]);
        let (_, b, _) = run(&args);
        assert_eq!(a, b);
    }
}
