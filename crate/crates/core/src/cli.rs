//! Datum file parsing, report assembly, and the subcommand drivers behind
//! the binary. Reports are flat ordered key/value documents and are
//! byte-deterministic for a given input, independent of thread count.

use std::collections::BTreeMap;

use serde::Deserialize;
use toml::Spanned;

use crate::abelian::AbelianGroup;
use crate::exactfield::CycloNum;
use crate::freealg::{lifted_relations, top_pbw_degree, truncated_quotient_dim};
use crate::linking::{
    check_hypotheses, enumerate_data, enumerate_linkings, linkable, linkable_pairs,
    validate_datum, Datum, Flag, LinkingDatum,
};
use crate::nichols::{nichols_dims, pbw_hilbert_series, pbw_total_dimension};
use crate::rootsys::{DynkinType, RootSystemData};
use crate::{Error, Result};

/// Exit codes of the binary.
pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_LINKING: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

/// Map an error to the exit code contract.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::InvalidLinking { .. } => EXIT_LINKING,
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_PARSE,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Kv,
    Json,
}

/// Ordered key/value report with two plain-text serializations.
#[derive(Clone, Debug, Default)]
pub struct Report {
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.entries.push((key.into(), value.to_string()));
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn emit(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Kv => {
                let mut out = String::new();
                for (k, v) in &self.entries {
                    out.push_str(k);
                    out.push_str(" = ");
                    out.push_str(v);
                    out.push('\n');
                }
                out
            }
            OutputFormat::Json => {
                let mut out = String::from("{\n");
                for (i, (k, v)) in self.entries.iter().enumerate() {
                    out.push_str("  ");
                    out.push_str(&json_string(k));
                    out.push_str(": ");
                    out.push_str(&json_string(v));
                    if i + 1 < self.entries.len() {
                        out.push(',');
                    }
                    out.push('\n');
                }
                out.push_str("}\n");
                out
            }
        }
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDatumFile {
    group: RawGroup,
    #[serde(default)]
    vertex: Vec<RawVertex>,
    #[serde(default)]
    cartan: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    link: Vec<RawLink>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    orders: Vec<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVertex {
    g: Spanned<Vec<i64>>,
    chi: Spanned<Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLink {
    i: usize,
    j: usize,
    lambda: Spanned<String>,
}

/// A parsed datum file: the validated datum and the linking values.
#[derive(Debug)]
pub struct ParsedDatum {
    pub datum: Datum,
    pub lambda: LinkingDatum,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let mut line = 1;
    let mut col = 1;
    for (idx, c) in text.char_indices() {
        if idx >= offset {
            break;
        }
        if c == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

fn parse_error(text: &str, offset: usize, msg: String) -> Error {
    let (line, col) = line_col(text, offset);
    Error::Parse { line, col, msg }
}

/// Parse and validate a datum file.
pub fn parse_datum_file(text: &str) -> Result<ParsedDatum> {
    let raw: RawDatumFile = toml::from_str(text).map_err(|e| {
        let offset = e.span().map(|s| s.start).unwrap_or(0);
        parse_error(text, offset, e.message().to_string())
    })?;

    let group = AbelianGroup::new(raw.group.orders.clone())
        .map_err(|e| parse_error(text, 0, e.to_string()))?;
    let s = group.rank();

    let mut g = Vec::new();
    let mut chi = Vec::new();
    for v in &raw.vertex {
        if v.g.get_ref().len() != s {
            return Err(parse_error(
                text,
                v.g.span().start,
                format!("g has {} entries, group has rank {}", v.g.get_ref().len(), s),
            ));
        }
        if v.chi.get_ref().len() != s {
            return Err(parse_error(
                text,
                v.chi.span().start,
                format!(
                    "chi has {} entries, group has rank {}",
                    v.chi.get_ref().len(),
                    s
                ),
            ));
        }
        g.push(group.element(v.g.get_ref()).expect("length checked"));
        chi.push(group.character(v.chi.get_ref()).expect("length checked"));
    }

    let supplied = match &raw.cartan {
        Some(rows) => Some(crate::rootsys::CartanMatrix::new(rows.clone())?),
        None => None,
    };
    let datum = validate_datum(&group, g, chi, supplied.as_ref())?;

    let conductor = datum.conductor();
    let mut lambda_map = BTreeMap::new();
    for link in &raw.link {
        if link.i == 0 || link.j == 0 || link.i > datum.theta() || link.j > datum.theta() {
            return Err(parse_error(
                text,
                link.lambda.span().start,
                format!("link vertices ({},{}) out of range", link.i, link.j),
            ));
        }
        let (i, j) = (link.i - 1, link.j - 1);
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let value = parse_lambda(link.lambda.get_ref(), conductor).map_err(|msg| {
            parse_error(text, link.lambda.span().start, msg)
        })?;
        lambda_map.insert((i, j), value);
    }
    let lambda = LinkingDatum::new(&datum, lambda_map)?;
    Ok(ParsedDatum { datum, lambda })
}

/// Parse a rational linear combination of root-of-unity powers:
/// `1`, `-2/3`, `z^2`, `1/2 + 3*z^4 - z`, with `z` the canonical root of
/// order equal to the group exponent.
pub fn parse_lambda(input: &str, conductor: u64) -> std::result::Result<CycloNum, String> {
    use num_bigint::BigInt;
    use num_rational::BigRational;

    let mut out = CycloNum::zero(conductor);
    let bytes: Vec<char> = input.chars().collect();
    let mut pos = 0usize;

    fn skip_ws(bytes: &[char], pos: &mut usize) {
        while *pos < bytes.len() && bytes[*pos].is_whitespace() {
            *pos += 1;
        }
    }

    fn parse_uint(bytes: &[char], pos: &mut usize) -> std::result::Result<i64, String> {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if start == *pos {
            return Err(format!("expected a number at offset {start}"));
        }
        bytes[start..*pos]
            .iter()
            .collect::<String>()
            .parse::<i64>()
            .map_err(|e| e.to_string())
    }

    skip_ws(&bytes, &mut pos);
    let mut first = true;
    while pos < bytes.len() {
        let mut sign = 1i64;
        if bytes[pos] == '+' || bytes[pos] == '-' {
            if bytes[pos] == '-' {
                sign = -1;
            }
            pos += 1;
            skip_ws(&bytes, &mut pos);
        } else if !first {
            return Err(format!("expected '+' or '-' at offset {pos}"));
        }
        first = false;

        // optional rational coefficient
        let mut num = 1i64;
        let mut den = 1i64;
        let mut saw_coeff = false;
        if pos < bytes.len() && bytes[pos].is_ascii_digit() {
            num = parse_uint(&bytes, &mut pos)?;
            saw_coeff = true;
            skip_ws(&bytes, &mut pos);
            if pos < bytes.len() && bytes[pos] == '/' {
                pos += 1;
                skip_ws(&bytes, &mut pos);
                den = parse_uint(&bytes, &mut pos)?;
                if den == 0 {
                    return Err("zero denominator".into());
                }
                skip_ws(&bytes, &mut pos);
            }
            if pos < bytes.len() && bytes[pos] == '*' {
                pos += 1;
                skip_ws(&bytes, &mut pos);
            }
        }

        // optional root power z or z^k
        let mut root_exp: Option<i64> = None;
        if pos < bytes.len() && bytes[pos] == 'z' {
            pos += 1;
            if pos < bytes.len() && bytes[pos] == '^' {
                pos += 1;
                skip_ws(&bytes, &mut pos);
                root_exp = Some(parse_uint(&bytes, &mut pos)?);
            } else {
                root_exp = Some(1);
            }
            skip_ws(&bytes, &mut pos);
        }

        if !saw_coeff && root_exp.is_none() {
            return Err(format!("expected a term at offset {pos}"));
        }

        let coeff = BigRational::new(BigInt::from(sign * num), BigInt::from(den));
        let term = match root_exp {
            Some(k) => CycloNum::root_power(conductor, k)
                .scale(&coeff),
            None => CycloNum::from_rational(conductor, coeff),
        };
        out = out.add(&term);
        skip_ws(&bytes, &mut pos);
    }
    Ok(out)
}

fn vec_i64(v: &[u64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn push_datum_echo(report: &mut Report, d: &Datum) {
    report.push("group.orders", vec_i64(d.group.orders()));
    for i in 0..d.theta() {
        report.push(format!("vertex.{}.g", i + 1), vec_i64(d.g[i].exponents()));
        report.push(
            format!("vertex.{}.chi", i + 1),
            vec_i64(d.chi[i].exponents()),
        );
    }
}

fn push_cartan(report: &mut Report, d: &Datum) {
    for (i, row) in d.cartan.rows().iter().enumerate() {
        report.push(
            format!("cartan.row.{}", i + 1),
            row.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        );
    }
    for (k, (comp, &n)) in d
        .components
        .components
        .iter()
        .zip(&d.components.orders)
        .enumerate()
    {
        report.push(format!("component.{}.type", k + 1), comp.dynkin);
        report.push(
            format!("component.{}.vertices", k + 1),
            comp.vertices
                .iter()
                .map(|v| (v + 1).to_string())
                .collect::<Vec<_>>()
                .join(" "),
        );
        report.push(format!("component.{}.N", k + 1), n);
    }
    for w in &d.warnings {
        report.push("warning", w);
    }
}

fn push_roots(report: &mut Report, rs: &RootSystemData) {
    report.push("positive_roots.count", rs.positive_roots.len());
    for (k, beta) in rs.convex_order.iter().enumerate() {
        report.push(
            format!("convex_order.{}", k + 1),
            beta.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        );
    }
}

/// `check`: validate the datum, detect the Cartan matrix, classify, and
/// print the root data.
pub fn cmd_check(text: &str) -> Result<Report> {
    let parsed = parse_datum_file(text)?;
    let d = &parsed.datum;
    let rs = RootSystemData::build(&d.cartan)?;
    let mut report = Report::new();
    report.push("command", "check");
    push_datum_echo(&mut report, d);
    push_cartan(&mut report, d);
    push_roots(&mut report, &rs);
    report.push("valid", "true");
    Ok(report)
}

/// `nichols`: graded dimensions against the PBW series, degree by degree.
/// Returns the report and the exit code: 0 on a full match, 1 on mismatch,
/// 4 when the budget truncated the computation (partial report).
pub fn cmd_nichols(text: &str, max_degree: Option<u32>, budget: u64) -> Result<(Report, i32)> {
    let parsed = parse_datum_file(text)?;
    let d = &parsed.datum;
    let rs = RootSystemData::build(&d.cartan)?;
    let top = top_pbw_degree(d, &rs);
    let requested = max_degree.unwrap_or(top.min(u32::MAX as u64) as u32);

    // largest degree the budget admits
    let theta = d.theta() as u128;
    let mut allowed = 0u32;
    while allowed < requested && theta.pow(allowed + 1) <= budget as u128 {
        allowed += 1;
    }
    let truncated = allowed < requested;

    let dims = nichols_dims(&d.braiding, allowed, budget)?;
    let pbw = pbw_hilbert_series(&rs, &d.components.orders, allowed as usize)?;

    let mut report = Report::new();
    report.push("command", "nichols");
    push_datum_echo(&mut report, d);
    push_cartan(&mut report, d);
    report.push("max_degree", allowed);
    report.push("truncated", truncated);
    let mut all_match = true;
    for n in 0..=allowed as usize {
        let ok = dims[n] == pbw[n];
        all_match &= ok;
        report.push(
            format!("degree.{n}"),
            format!(
                "nichols {} pbw {} {}",
                dims[n],
                pbw[n],
                if ok { "MATCH" } else { "MISMATCH" }
            ),
        );
    }
    report.push("nichols.total", dims.iter().sum::<u64>());
    report.push("pbw.total", pbw_total_dimension(&rs, &d.components.orders)?);
    report.push("verdict", if all_match { "MATCH" } else { "MISMATCH" });
    let exit = if truncated {
        EXIT_BUDGET
    } else if all_match {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    };
    Ok((report, exit))
}

/// `lift`: truncated quotient dimensions for increasing degree caps, checked
/// against the closed dimension formula. Exit code 0 when the final cap
/// stabilized at the formula value, 1 otherwise.
pub fn cmd_lift(text: &str, max_degree: Option<u32>, budget: u64) -> Result<(Report, i32)> {
    let parsed = parse_datum_file(text)?;
    let d = &parsed.datum;
    let rs = RootSystemData::build(&d.cartan)?;
    let rels = lifted_relations(d, &rs, &parsed.lambda)?;
    let formula = (d.group.cardinality() as u128)
        * pbw_total_dimension(&rs, &d.components.orders)?;

    let cap = max_degree.unwrap_or((top_pbw_degree(d, &rs) + 1).min(u32::MAX as u64) as u32);
    let mut report = Report::new();
    report.push("command", "lift");
    push_datum_echo(&mut report, d);
    for (&(i, j), value) in parsed.lambda.entries() {
        report.push(format!("lambda.{}.{}", i + 1, j + 1), value);
    }
    report.push("formula", formula);

    let mut verified = false;
    let mut last = None;
    for cap_d in 1..=cap {
        let q = truncated_quotient_dim(&rels, d, cap_d, budget)?;
        report.push(
            format!("cap.{cap_d}.total"),
            format!("{} stabilized {}", q.total, q.stabilized),
        );
        last = Some(q);
    }
    if let Some(q) = last {
        report.push(
            "dims",
            q.dims
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        );
        verified = q.stabilized && q.total as u128 == formula;
    }
    report.push("verdict", if verified { "VERIFIED" } else { "UNVERIFIED" });
    Ok((report, if verified { EXIT_OK } else { EXIT_MISMATCH }))
}

/// `hypotheses`: evaluate every theorem hypothesis against the datum.
pub fn cmd_hypotheses(text: &str, p_context: Option<u64>) -> Result<Report> {
    let parsed = parse_datum_file(text)?;
    let d = &parsed.datum;
    let h = check_hypotheses(d, p_context);
    let mut report = Report::new();
    report.push("command", "hypotheses");
    push_datum_echo(&mut report, d);
    push_flag(&mut report, "thm_main_applicable", &h.thm_main_applicable);
    push_flag(&mut report, "serre_lift_ok", &h.serre_lift_ok);
    push_flag(&mut report, "degree1_ok", &h.degree1_ok);
    push_flag(&mut report, "odd_orders_ok", &h.odd_orders_ok);
    push_flag(&mut report, "g2_3_ok", &h.g2_3_ok);
    push_flag(&mut report, "powroot_ok", &h.powroot_ok);
    for reason in &h.not_covered {
        report.push("not_covered", reason);
    }
    Ok(report)
}

fn push_flag(report: &mut Report, name: &str, flag: &Flag) {
    report.push(name, flag.ok);
    for reason in &flag.reasons {
        report.push(format!("{name}.reason"), reason);
    }
}

/// `link`: linkable pairs with certificates, linking enumeration, and the
/// validity of the file's lambda values.
pub fn cmd_link(text: &str) -> Result<Report> {
    let parsed = parse_datum_file(text)?;
    let d = &parsed.datum;
    let mut report = Report::new();
    report.push("command", "link");
    push_datum_echo(&mut report, d);
    let pairs = linkable_pairs(d);
    report.push("linkable_pairs.count", pairs.len());
    for &(i, j) in &pairs {
        report.push("linkable_pair", format!("{} {}", i + 1, j + 1));
    }
    for i in 0..d.theta() {
        for j in i + 1..d.theta() {
            let cert = linkable(d, i, j);
            if !cert.linkable {
                report.push(
                    format!("not_linkable.{}.{}", i + 1, j + 1),
                    cert.failed.join("; "),
                );
            }
        }
    }
    let linkings = enumerate_linkings(d, true);
    report.push("linkings.count", linkings.len());
    for (&(i, j), value) in parsed.lambda.entries() {
        report.push(format!("lambda.{}.{}", i + 1, j + 1), value);
    }
    report.push("lambda.valid", "true");
    Ok(report)
}

fn parse_type(s: &str) -> std::result::Result<DynkinType, String> {
    let s = s.trim();
    let (family, rank) = s.split_at(1);
    let n: usize = rank
        .parse()
        .map_err(|_| format!("bad Dynkin type {s:?}"))?;
    match (family, n) {
        ("A", n) if n >= 1 => Ok(DynkinType::A(n)),
        ("B", n) if n >= 2 => Ok(DynkinType::B(n)),
        ("C", n) if n >= 2 => Ok(DynkinType::C(n)),
        ("D", n) if n >= 4 => Ok(DynkinType::D(n)),
        ("E", n) if (6..=8).contains(&n) => Ok(DynkinType::E(n)),
        ("F", 4) => Ok(DynkinType::F4),
        ("G", 2) => Ok(DynkinType::G2),
        _ => Err(format!("bad Dynkin type {s:?}")),
    }
}

/// Parse a comma-separated Dynkin type whitelist, e.g. `A2,B2`.
pub fn parse_type_filter(s: &str) -> Result<Vec<DynkinType>> {
    s.split(',')
        .map(|t| {
            parse_type(t).map_err(|msg| Error::Parse {
                line: 1,
                col: 1,
                msg,
            })
        })
        .collect()
}

/// `enumerate`: all valid data over `(Z/p)^s`, streamed as report rows.
pub fn cmd_enumerate(
    p: u64,
    s: usize,
    theta_max: usize,
    types: Option<&[DynkinType]>,
    with_links: bool,
    reduce: bool,
    budget: u64,
) -> Result<Report> {
    let data = enumerate_data(p, s, theta_max, types, reduce, budget)?;
    let mut report = Report::new();
    report.push("command", "enumerate");
    report.push("p", p);
    report.push("s", s);
    report.push("theta_max", theta_max);
    report.push("reduced", reduce);
    let mut total_linkings = 0usize;
    for (idx, d) in data.iter().enumerate() {
        let key = format!("row.{}", idx + 1);
        let types: Vec<String> = d
            .components
            .components
            .iter()
            .map(|c| c.dynkin.to_string())
            .collect();
        let mut desc = format!(
            "theta {} type {} g {} chi {}",
            d.theta(),
            types.join("x"),
            d.g
                .iter()
                .map(|g| vec_i64(g.exponents()))
                .collect::<Vec<_>>()
                .join(","),
            d.chi
                .iter()
                .map(|c| vec_i64(c.exponents()))
                .collect::<Vec<_>>()
                .join(","),
        );
        if with_links {
            let count = enumerate_linkings(d, true).len();
            total_linkings += count;
            desc.push_str(&format!(" linkings {count}"));
        }
        report.push(key, desc);
    }
    report.push("rows", data.len());
    if with_links {
        report.push("linkings.total", total_linkings);
    }
    Ok(report)
}
