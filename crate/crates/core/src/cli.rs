//! The `pargal` command line.
//!
//! Every command renders a text report on stdout; `--out` also writes the
//! JSON form. Exit codes: 0 success, 1 a failed check (invalid action, golden
//! mismatch, not Galois, no isomorphism), 2 parse or usage error, 3 an
//! isomorphism search that timed out.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::envelope::{compute_e_h, globalize, psi_map};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::galois::{galois_check, global_pair_iso_with_timeout, partial_iso_with_timeout, verify_coordinates, GaloisCertificate, IsoOutcome};
use crate::group::{subgroup_closure, Subgroup};
use crate::json::{action_to_doc, action_to_json, globalization_to_doc, parse_action};
use crate::notation;
use crate::paction::{AlgElement, ExtensionRecord, PointSet, SetPartialAction};
use crate::quotient::{galois_transfer_check, invariants, is_quotient_global, quotient_partial_action, quotient_partial_action_direct, QuotientAction};
use crate::ring::BaseRing;
use crate::semigroup::{clifford_decompose, idempotent_route_a, idempotent_route_b, pi_image, star_product, DeltaConvention};

fn parse_duration(s: &str) -> std::result::Result<Duration, String> {
    let s = s.trim();
    let (num, unit) = s.split_at(s.find(|c: char| !c.is_ascii_digit() && c != '.').unwrap_or(s.len()));
    let v: f64 = num.parse().map_err(|_| format!("bad duration `{s}`"))?;
    let secs = match unit {
        "" | "s" => v,
        "ms" => v / 1000.0,
        "m" => v * 60.0,
        _ => return Err(format!("bad duration unit `{unit}`")),
    };
    Ok(Duration::from_secs_f64(secs))
}

#[derive(Parser, Debug)]
#[command(name = "pargal", version, about = "Partial actions, globalizations and partial Galois extensions")]
pub struct Cli {
    /// Base field: `q` or `fp:<prime>`.
    #[arg(long, global = true, default_value = "q")]
    pub ring: BaseRing,
    /// Copy of G in G×G used by products.
    #[arg(long, global = true, default_value = "antidiagonal", value_parser = parse_delta)]
    pub delta: DeltaConvention,
    /// Deadline for isomorphism searches.
    #[arg(long, global = true, default_value = "10s", value_parser = parse_duration)]
    pub timeout: Duration,
    /// Maximum number of new nodes in a closure.
    #[arg(long, global = true, default_value_t = 64)]
    pub budget: usize,
    /// Also write the JSON report here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_delta(s: &str) -> std::result::Result<DeltaConvention, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum QuotientRoute {
    Definitional,
    Direct,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum IdemRoute {
    A,
    B,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Example {
    Ex0,
    Ec6r,
    Sec52,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the partial action axioms.
    Validate { path: PathBuf },
    /// Build the enveloping action.
    Globalize { path: PathBuf },
    /// Blocks of the invariant subalgebra.
    Invariants {
        path: PathBuf,
        /// Generators of the subgroup (default: the whole group).
        #[arg(long, value_delimiter = ',')]
        subgroup: Vec<String>,
    },
    /// Quotient partial action by a normal subgroup.
    Quotient {
        path: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        subgroup: Vec<String>,
        #[arg(long, value_enum, default_value = "both")]
        route: QuotientRoute,
    },
    /// Partial Galois certificate.
    Galois { path: PathBuf },
    /// Partial isomorphism, or isomorphism of globalization pairs.
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        global_pair: bool,
    },
    /// Product of two classes.
    Star { a: PathBuf, b: PathBuf },
    /// Idempotent attached to a class.
    Idem {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        route: IdemRoute,
    },
    /// Image in the Harrison group.
    Pi { path: PathBuf },
    /// Closure of seeds with its semilattice of idempotents.
    Clifford {
        #[arg(required = true)]
        seeds: Vec<PathBuf>,
    },
    /// Recompute a worked example and compare with golden values.
    Reproduce {
        #[arg(value_enum)]
        example: Example,
    },
    /// Run a pipeline of operations on one action.
    Report {
        path: PathBuf,
        /// globalize | invariants | quotient | galois | star | idem | pi | clifford
        ops: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        subgroup: Vec<String>,
    },
}

/// Settings shared by all commands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub ring: BaseRing,
    pub delta: DeltaConvention,
    pub timeout: Duration,
    pub budget: usize,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            ring: BaseRing::Rationals,
            delta: DeltaConvention::Antidiagonal,
            timeout: Duration::from_secs(10),
            budget: 64,
            out: None,
        }
    }
}

/// A rendered command result.
#[derive(Clone, Debug)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub code: i32,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Self { text, json, code: 0 }
    }
}

enum Failure {
    Usage(String),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::InvalidTable(_) | Error::IndexOutOfRange { .. } | Error::DimensionMismatch(_) => 2,
        _ => 1,
    }
}

fn load(path: &Path) -> Result<SetPartialAction> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_action(&text)
}

fn load_valid(path: &Path) -> Result<SetPartialAction> {
    let a = load(path)?;
    a.validate().into_result()?;
    Ok(a)
}

fn subgroup_of(a: &SetPartialAction, gens: &[String]) -> Result<Subgroup> {
    if gens.is_empty() {
        return Ok(Subgroup::whole(a.group()));
    }
    let ids = gens
        .iter()
        .map(|n| a.group().element_by_name(n))
        .collect::<Result<Vec<_>>>()?;
    subgroup_closure(a.group(), &ids)
}

fn names(a: &SetPartialAction, h: &Subgroup) -> Vec<String> {
    h.members().iter().map(|&x| a.group().name(x).to_string()).collect()
}

pub fn validate_report(a: &SetPartialAction) -> Report {
    let r = a.validate();
    let mut text = String::new();
    if r.is_valid() {
        text.push_str("valid\n");
    }
    let mut list = Vec::new();
    for v in &r.violations {
        let _ = writeln!(text, "{:?}: {}", v.axiom, v.detail);
        list.push(json!({"axiom": format!("{:?}", v.axiom), "detail": v.detail}));
    }
    Report {
        text,
        json: json!({"valid": r.is_valid(), "violations": list}),
        code: if r.is_valid() { 0 } else { 1 },
    }
}

pub fn globalize_report(a: &SetPartialAction) -> Result<Report> {
    let gl = globalize(a)?;
    let t = gl.global();
    let mut text = format!("T: {} points, S = {}\n", t.points(), notation::set(t.labels(), &gl.unit_s()));
    for g in t.group().elements() {
        let _ = writeln!(text, "beta_{}: {}", t.group().name(g), notation::map(t, g));
    }
    Ok(Report::ok(text, serde_json::to_value(globalization_to_doc(&gl)).expect("serializable")))
}

pub fn invariants_report(a: &SetPartialAction, h: &Subgroup) -> Report {
    let inv = invariants(a, h);
    let text = format!("S^H = {}\n", notation::direct_sum(a.labels(), inv.blocks()));
    let blocks: Vec<Vec<&str>> = inv.blocks().iter().map(|b| b.iter().map(|&x| a.label(x)).collect()).collect();
    Report::ok(text, json!({"subgroup": names(a, h), "blocks": blocks}))
}

fn quotient_section(a: &SetPartialAction, qa: &QuotientAction) -> (String, Value) {
    let mut text = format!("S^H = {}\n", notation::direct_sum(a.labels(), qa.base.blocks()));
    let mut cosets = Vec::new();
    for (c, t) in qa.tilde_idem.iter().enumerate() {
        let name = qa.action.group().name(c).to_string();
        let blocks: Vec<Vec<usize>> = t.members().map(|b| qa.base.blocks()[b].clone()).collect();
        let tilde = notation::set(a.labels(), &qa.base.expand(t));
        let ideal = notation::direct_sum(a.labels(), &blocks);
        let map = notation::map(&qa.action, c);
        let _ = writeln!(text, "{name}: 1~ = {tilde}; D~ = {ideal}; alpha = {map}");
        cosets.push(json!({"coset": name, "tilde": tilde, "ideal": ideal, "alpha": map}));
    }
    (text, json!({"cosets": cosets, "action": action_to_doc(&qa.action)}))
}

pub fn quotient_report(a: &SetPartialAction, h: &Subgroup, route: QuotientRoute) -> Result<Report> {
    let def = matches!(route, QuotientRoute::Definitional | QuotientRoute::Both)
        .then(|| quotient_partial_action(a, h))
        .transpose()?;
    let dir = matches!(route, QuotientRoute::Direct | QuotientRoute::Both)
        .then(|| quotient_partial_action_direct(a, h))
        .transpose()?;
    let qa = def.as_ref().or(dir.as_ref()).expect("one route runs");
    let (mut text, mut js) = quotient_section(a, qa);
    let glob = is_quotient_global(a, h)?;
    let _ = writeln!(text, "global: {}", glob.is_global());
    js["global"] = json!(glob.is_global());
    js["subgroup"] = json!(names(a, h));
    let mut code = 0;
    if let (Some(d), Some(r)) = (&def, &dir) {
        let agree = d == r;
        let _ = writeln!(text, "routes agree: {agree}");
        js["routes_agree"] = json!(agree);
        if !agree {
            code = 1;
        }
    }
    Ok(Report { text, json: js, code })
}

fn coords_text(a: &SetPartialAction, coords: &[(AlgElement, AlgElement)]) -> Vec<(String, String)> {
    coords
        .iter()
        .map(|(x, y)| (notation::element(a.labels(), x), notation::element(a.labels(), y)))
        .collect()
}

pub fn galois_report(a: &SetPartialAction, ring: BaseRing) -> Result<Report> {
    Ok(match galois_check(a, ring)? {
        GaloisCertificate::Galois { coords } => {
            let pairs = coords_text(a, &coords);
            let mut text = String::from("partial Galois\n");
            for (i, (x, y)) in pairs.iter().enumerate() {
                let _ = writeln!(text, "x{0} = {x}; y{0} = {y}", i + 1);
            }
            Report::ok(text, json!({"galois": true, "coordinates": pairs}))
        }
        GaloisCertificate::NotGalois(f) => Report {
            text: format!("not partial Galois: {f:?}\n"),
            json: json!({"galois": false, "reason": format!("{f:?}")}),
            code: 1,
        },
    })
}

fn iso_report(o: IsoOutcome) -> Report {
    match o {
        IsoOutcome::Found(w) => Report::ok(format!("isomorphic: {:?}\n", w.map), json!({"isomorphic": true, "map": w.map})),
        IsoOutcome::NotFound => Report {
            text: "not isomorphic\n".into(),
            json: json!({"isomorphic": false}),
            code: 1,
        },
        IsoOutcome::Indeterminate => Report {
            text: "indeterminate: search timed out\n".into(),
            json: json!({"isomorphic": null}),
            code: 3,
        },
    }
}

fn action_section(title: &str, a: &SetPartialAction) -> (String, Value) {
    let mut text = format!("{title}: {}\n", notation::direct_sum(a.labels(), &(0..a.points()).map(|x| vec![x]).collect::<Vec<_>>()));
    for g in a.group().elements() {
        let _ = writeln!(
            text,
            "  {}: ideal {}; map {}",
            a.group().name(g),
            notation::set(a.labels(), &a.ideal(g)),
            notation::map(a, g)
        );
    }
    (text, serde_json::to_value(action_to_doc(a)).expect("serializable"))
}

fn record(a: SetPartialAction, cfg: &RunConfig) -> Result<ExtensionRecord> {
    ExtensionRecord::galois(a, cfg.ring)
}

pub fn star_report(a: &SetPartialAction, b: &SetPartialAction, cfg: &RunConfig) -> Result<Report> {
    let p = star_product(&record(a.clone(), cfg)?, &record(b.clone(), cfg)?, cfg.delta)?;
    let (text, js) = action_section("product", p.node.action());
    Ok(Report::ok(text, json!({"product": js})))
}

pub fn idem_report(a: &SetPartialAction, route: IdemRoute, cfg: &RunConfig) -> Result<Report> {
    let rec = record(a.clone(), cfg)?;
    let mut text = String::new();
    let mut js = json!({});
    let ra = matches!(route, IdemRoute::A | IdemRoute::Both)
        .then(|| idempotent_route_a(&rec, cfg.delta))
        .transpose()?;
    let rb = matches!(route, IdemRoute::B | IdemRoute::Both)
        .then(|| idempotent_route_b(&rec, cfg.delta).map(|r| r.0))
        .transpose()?;
    if let Some(n) = &ra {
        let (t, j) = action_section("route A", n.action());
        text.push_str(&t);
        js["route_a"] = j;
    }
    if let Some(n) = &rb {
        let (t, j) = action_section("route B", n.action());
        text.push_str(&t);
        js["route_b"] = j;
    }
    let mut code = 0;
    if let (Some(x), Some(y)) = (&ra, &rb) {
        let agree = partial_iso_with_timeout(x.action(), y.action(), cfg.timeout)?.is_found();
        let _ = writeln!(text, "routes agree: {agree}");
        js["routes_agree"] = json!(agree);
        code = i32::from(!agree);
    }
    let e = ra.as_ref().or(rb.as_ref()).expect("one route runs");
    let _ = writeln!(text, "global: {}", e.action().is_global());
    js["global"] = json!(e.action().is_global());
    Ok(Report { text, json: js, code })
}

pub fn pi_report(a: &SetPartialAction, cfg: &RunConfig) -> Result<Report> {
    let img = pi_image(&record(a.clone(), cfg)?)?;
    let (mut text, js) = action_section("pi", img.action());
    let _ = writeln!(text, "invariant blocks: {}", img.invariants().len());
    Ok(Report::ok(text, json!({"image": js, "invariant_blocks": img.invariants().len()})))
}

pub fn clifford_report(seeds: &[SetPartialAction], cfg: &RunConfig) -> Result<Report> {
    let recs = seeds.iter().map(|a| record(a.clone(), cfg)).collect::<Result<Vec<_>>>()?;
    let r = clifford_decompose(&recs, cfg.budget, cfg.delta)?;
    let mut text = format!("{} classes, {} idempotents{}\n", r.nodes.len(), r.idempotents.len(), if r.truncated { " (truncated)" } else { "" });
    let mut nodes = Vec::new();
    for (i, n) in r.nodes.iter().enumerate() {
        let a = n.action();
        let _ = writeln!(
            text,
            "  [{i}] {} points, inverse [{}], idempotent [{}], global {}",
            a.points(),
            r.inverse[i],
            r.idempotent_of[i],
            a.is_global()
        );
        nodes.push(json!({"id": i, "action": action_to_doc(a), "inverse": r.inverse[i], "idempotent": r.idempotent_of[i]}));
    }
    for (e, comp) in r.idempotents.iter().zip(&r.components) {
        let _ = writeln!(text, "component of [{e}]: {comp:?}");
    }
    let _ = writeln!(text, "order: {:?}", r.order);
    let _ = writeln!(text, "membership criterion agrees: {}", r.criterion_agrees);
    if !r.not_idempotent.is_empty() {
        let _ = writeln!(text, "not idempotent: {:?}", r.not_idempotent);
    }
    let components: Vec<Value> = r
        .idempotents
        .iter()
        .zip(&r.components)
        .map(|(e, c)| json!({"idempotent": e, "members": c}))
        .collect();
    Ok(Report {
        text,
        json: json!({
            "nodes": nodes,
            "idempotents": r.idempotents,
            "semilattice": r.order,
            "components": components,
            "criterion_agrees": r.criterion_agrees,
            "not_idempotent": r.not_idempotent,
            "truncated": r.truncated,
        }),
        code: i32::from(!r.criterion_agrees),
    })
}

/// Field-level comparison against golden values.
pub struct GoldenDiff {
    pub fields: Vec<(String, String, String)>,
}

impl GoldenDiff {
    pub fn mismatches(&self) -> Vec<&(String, String, String)> {
        self.fields.iter().filter(|(_, e, a)| e != a).collect()
    }
}

const GOLDEN_EX0: &[(&str, &str)] = &[
    ("S_g", "e1+e2"),
    ("S_g^2", "e1+e3"),
    ("S_g^3", "e2+e3"),
    ("alpha_g", "e2 -> e1, e3 -> e2"),
    ("alpha_g^2", "e1 -> e3, e3 -> e1"),
    ("alpha_g^3", "e1 -> e2, e2 -> e3"),
    ("T", "e1+e2+e3+e4"),
    ("beta_g", "e1 -> e4, e2 -> e1, e3 -> e2, e4 -> e3"),
    ("psi_H", "a e1 + b(e2+e4) + c e3"),
    ("e_H", "e1+e2+e3+e4"),
    ("S^H", "R(e1+e3) ⊕ R e2"),
    ("1~_H", "e1+e2+e3"),
    ("1~_gH", "e1+e2+e3"),
    ("alpha_gH", "e1+e3 -> e2, e2 -> e1+e3"),
    ("quotient global", "true"),
    ("routes agree", "true"),
    ("galois", "true"),
    ("quotient galois", "true"),
];

const GOLDEN_EC6R: &[(&str, &str)] = &[
    ("S_g", "e1"),
    ("S_g^2", "e3"),
    ("S_g^3", "e3+e6"),
    ("S_g^4", "e1"),
    ("S_g^5", "e6"),
    ("psi_H", "a1(e1+e4) + a3 e3 + a6 e6"),
    ("e_H", "e1+e3+e4+e6"),
    ("S^H", "R e1 ⊕ R(e3+e6)"),
    ("1~_H", "e1+e3+e6"),
    ("1~_gH", "e1"),
    ("1~_g^2H", "e3+e6"),
    ("D~_H", "R e1 ⊕ R(e3+e6)"),
    ("D~_gH", "R e1"),
    ("D~_g^2H", "R(e3+e6)"),
    ("alpha_H", "e1 -> e1, e3+e6 -> e3+e6"),
    ("alpha_gH", "e3+e6 -> e1"),
    ("alpha_g^2H", "e1 -> e3+e6"),
    ("quotient global", "false"),
    ("routes agree", "true"),
    ("galois", "true"),
    ("quotient galois", "true"),
];

const GOLDEN_SEC52: &[(&str, &str)] = &[
    ("S_g", "e2"),
    ("S_g^2", "0"),
    ("S_g^3", "e1"),
    ("published coordinates", "true"),
    ("galois", "true"),
    ("S~", "R(e11+e22) ⊕ R e12 ⊕ R e21"),
    ("1~_(1,1)", "e11+e12+e21+e22"),
    ("1~_(g,1)", "e11+e12+e22"),
    ("1~_(g^2,1)", "e12+e21"),
    ("1~_(g^3,1)", "e11+e21+e22"),
    ("D~_(g,1)", "R(e11+e22) ⊕ R e12"),
    ("D~_(g^2,1)", "R e12 ⊕ R e21"),
    ("D~_(g^3,1)", "R(e11+e22) ⊕ R e21"),
    ("theta~_g", "e11+e22 -> e12, e21 -> e11+e22"),
    ("theta~_g^2", "e12 -> e21, e21 -> e12"),
    ("theta~_g^3", "e11+e22 -> e21, e12 -> e11+e22"),
    ("routes agree", "true"),
    ("idempotent routes agree", "true"),
    ("idempotent global", "false"),
];

fn golden(example: Example) -> &'static [(&'static str, &'static str)] {
    match example {
        Example::Ex0 => GOLDEN_EX0,
        Example::Ec6r => GOLDEN_EC6R,
        Example::Sec52 => GOLDEN_SEC52,
    }
}

fn ideals(a: &SetPartialAction, out: &mut Vec<(String, String)>) {
    for g in a.group().elements().skip(1) {
        out.push((format!("S_{}", a.group().name(g)), notation::set(a.labels(), &a.ideal(g))));
    }
}

fn quotient_fields(a: &SetPartialAction, h: &Subgroup, with_ideals: bool, out: &mut Vec<(String, String)>) -> Result<()> {
    let qa = quotient_partial_action(a, h)?;
    out.push(("S^H".into(), notation::direct_sum(a.labels(), qa.base.blocks())));
    for (c, t) in qa.tilde_idem.iter().enumerate() {
        let name = qa.action.group().name(c).to_string();
        out.push((format!("1~_{name}"), notation::set(a.labels(), &qa.base.expand(t))));
    }
    if with_ideals {
        for (c, t) in qa.tilde_idem.iter().enumerate() {
            let blocks: Vec<Vec<usize>> = t.members().map(|b| qa.base.blocks()[b].clone()).collect();
            out.push((format!("D~_{}", qa.action.group().name(c)), notation::direct_sum(a.labels(), &blocks)));
        }
    }
    let skip = usize::from(!with_ideals);
    for c in (0..qa.action.group().order()).skip(skip) {
        out.push((format!("alpha_{}", qa.action.group().name(c)), notation::map(&qa.action, c)));
    }
    out.push(("quotient global".into(), is_quotient_global(a, h)?.is_global().to_string()));
    out.push(("routes agree".into(), (qa == quotient_partial_action_direct(a, h)?).to_string()));
    let rec = ExtensionRecord::new(a.clone(), BaseRing::Rationals)?;
    out.push(("galois".into(), rec.is_galois().to_string()));
    out.push(("quotient galois".into(), galois_transfer_check(&rec, h).map(|t| t.certificate.is_galois() && t.invariants_match).unwrap_or(false).to_string()));
    Ok(())
}

fn psi_field(gl: &crate::envelope::Globalization, h: &Subgroup, vars: &[String]) -> (String, String) {
    let n = gl.size();
    let images: Vec<AlgElement> = (0..n)
        .map(|y| psi_map(gl, h, &AlgElement::basis(BaseRing::Rationals, n, y)))
        .collect();
    ("psi_H".into(), notation::linear_image(gl.global().labels(), &images, vars))
}

/// Recomputes every displayed quantity of a worked example.
pub fn reproduce(example: Example) -> Result<GoldenDiff> {
    let mut out: Vec<(String, String)> = Vec::new();
    match example {
        Example::Ex0 => {
            let a = fixtures::ex0();
            ideals(&a, &mut out);
            for g in 1..4 {
                out.push((format!("alpha_{}", a.group().name(g)), notation::map(&a, g)));
            }
            let gl = globalize(&a)?;
            out.push(("T".into(), notation::set(gl.global().labels(), &PointSet::full(gl.size()))));
            out.push(("beta_g".into(), notation::map(gl.global(), 1)));
            let h = subgroup_closure(a.group(), &[2])?;
            out.push(psi_field(&gl, &h, &notation::letters(4)));
            out.push(("e_H".into(), notation::set(gl.global().labels(), &compute_e_h(&gl, &h).e_h)));
            quotient_fields(&a, &h, false, &mut out)?;
        }
        Example::Ec6r => {
            let a = fixtures::ec6r();
            ideals(&a, &mut out);
            let gl = fixtures::ec6r_globalization();
            let h = subgroup_closure(a.group(), &[3])?;
            let vars: Vec<String> = (1..=6).map(|i| format!("a{i}")).collect();
            out.push(psi_field(&gl, &h, &vars));
            out.push(("e_H".into(), notation::set(gl.global().labels(), &compute_e_h(&gl, &h).e_h)));
            quotient_fields(&a, &h, true, &mut out)?;
        }
        Example::Sec52 => sec52_fields(&mut out)?,
    }
    let actual: std::collections::HashMap<String, String> = out.into_iter().collect();
    let fields = golden(example)
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string(), actual.get(*k).cloned().unwrap_or_else(|| "<missing>".into())))
        .collect();
    Ok(GoldenDiff { fields })
}

fn sec52_fields(out: &mut Vec<(String, String)>) -> Result<()> {
    let q = BaseRing::Rationals;
    let th = fixtures::sec52();
    ideals(&th, out);
    let e = |i| AlgElement::basis(q, 2, i);
    out.push(("published coordinates".into(), verify_coordinates(&th, &[(e(0), e(0)), (e(1), e(1))]).to_string()));
    let rec = ExtensionRecord::new(th.clone(), q)?;
    out.push(("galois".into(), rec.is_galois().to_string()));
    let inv = ExtensionRecord::new(th.inverse_action(), q)?;
    let p = star_product(&inv, &rec, DeltaConvention::Antidiagonal)?;
    let tl: Vec<String> = p.tensor.action.labels().iter().map(|l| notation::compact_tensor_label(l)).collect();
    let base = &p.quotient.base;
    out.push(("S~".into(), notation::direct_sum(&tl, base.blocks())));
    let s = p.node.action();
    let sl: Vec<String> = s.labels().iter().map(|l| notation::compact_tensor_label(l)).collect();
    let s = s.clone().with_labels(sl);
    for g in th.group().elements() {
        let name = th.group().name(g);
        let pair = if g == 0 { "(1,1)".to_string() } else { format!("({name},1)") };
        let t = &p.quotient.tilde_idem[p.coset_of[g]];
        out.push((format!("1~_{pair}"), notation::set(&tl, &base.expand(t))));
        if g != 0 {
            let blocks: Vec<Vec<usize>> = t.members().map(|b| base.blocks()[b].clone()).collect();
            out.push((format!("D~_{pair}"), notation::direct_sum(&tl, &blocks)));
            out.push((format!("theta~_{name}"), notation::map(&s, g)));
        }
    }
    let d = crate::semigroup::DeltaConvention::Antidiagonal.subgroup(th.group())?;
    out.push((
        "routes agree".into(),
        (p.quotient == quotient_partial_action_direct(&p.tensor.action, &d)?).to_string(),
    ));
    let rb = idempotent_route_b(&rec, DeltaConvention::Antidiagonal)?.0;
    out.push((
        "idempotent routes agree".into(),
        crate::galois::partial_iso(p.node.action(), rb.action())?.is_found().to_string(),
    ));
    out.push(("idempotent global".into(), p.node.action().is_global().to_string()));
    Ok(())
}

pub fn reproduce_report(example: Example) -> Result<Report> {
    let diff = reproduce(example)?;
    let mut text = String::new();
    let mut fields = Vec::new();
    for (k, e, a) in &diff.fields {
        let mark = if e == a { "ok" } else { "MISMATCH" };
        let _ = writeln!(text, "{mark:8} {k}: {a}");
        if e != a {
            let _ = writeln!(text, "         expected: {e}");
        }
        fields.push(json!({"field": k, "expected": e, "actual": a, "match": e == a}));
    }
    let bad = diff.mismatches().len();
    let _ = writeln!(text, "{} fields, {bad} mismatches", diff.fields.len());
    Ok(Report {
        text,
        json: json!({"example": format!("{example:?}").to_lowercase(), "fields": fields, "mismatches": bad}),
        code: i32::from(bad > 0),
    })
}

const OPS: &[&str] = &["globalize", "invariants", "quotient", "galois", "star", "idem", "pi", "clifford"];

fn pipeline(a: &SetPartialAction, ops: &[String], gens: &[String], cfg: &RunConfig) -> std::result::Result<Report, Failure> {
    if let Some(bad) = ops.iter().find(|o| !OPS.contains(&o.as_str())) {
        return Err(Failure::Usage(format!("unknown op `{bad}`; expected one of {}", OPS.join(", "))));
    }
    if ops.is_empty() {
        return Ok(Report::ok(action_to_json(a) + "\n", serde_json::to_value(action_to_doc(a)).expect("serializable")));
    }
    a.validate().into_result()?;
    let mut text = String::new();
    let mut sections = Vec::new();
    let mut code = 0;
    for op in ops {
        let r = match op.as_str() {
            "globalize" => globalize_report(a)?,
            "invariants" => invariants_report(a, &subgroup_of(a, gens)?),
            "quotient" => quotient_report(a, &subgroup_of(a, gens)?, QuotientRoute::Both)?,
            "galois" => galois_report(a, cfg.ring)?,
            "star" => star_report(a, a, cfg)?,
            "idem" => idem_report(a, IdemRoute::Both, cfg)?,
            "pi" => pi_report(a, cfg)?,
            "clifford" => clifford_report(std::slice::from_ref(a), cfg)?,
            _ => unreachable!("checked above"),
        };
        let _ = writeln!(text, "== {op}");
        text.push_str(&r.text);
        sections.push(json!({"op": op, "result": r.json}));
        code = code.max(r.code);
    }
    Ok(Report {
        text,
        json: json!({"input": action_to_doc(a), "ops": sections}),
        code,
    })
}

fn dispatch(cli: &Cli) -> std::result::Result<Report, Failure> {
    let cfg = RunConfig {
        ring: cli.ring,
        delta: cli.delta,
        timeout: cli.timeout,
        budget: cli.budget,
        out: cli.out.clone(),
    };
    Ok(match &cli.command {
        Command::Validate { path } => validate_report(&load(path)?),
        Command::Globalize { path } => globalize_report(&load_valid(path)?)?,
        Command::Invariants { path, subgroup } => {
            let a = load_valid(path)?;
            invariants_report(&a, &subgroup_of(&a, subgroup)?)
        }
        Command::Quotient { path, subgroup, route } => {
            let a = load_valid(path)?;
            quotient_report(&a, &subgroup_of(&a, subgroup)?, *route)?
        }
        Command::Galois { path } => galois_report(&load_valid(path)?, cfg.ring)?,
        Command::Iso { a, b, global_pair } => {
            let (a, b) = (load_valid(a)?, load_valid(b)?);
            if *global_pair {
                iso_report(global_pair_iso_with_timeout(&globalize(&a)?, &globalize(&b)?, cfg.timeout)?)
            } else {
                iso_report(partial_iso_with_timeout(&a, &b, cfg.timeout)?)
            }
        }
        Command::Star { a, b } => star_report(&load_valid(a)?, &load_valid(b)?, &cfg)?,
        Command::Idem { path, route } => idem_report(&load_valid(path)?, *route, &cfg)?,
        Command::Pi { path } => pi_report(&load_valid(path)?, &cfg)?,
        Command::Clifford { seeds } => {
            let seeds = seeds.iter().map(|p| load_valid(p)).collect::<Result<Vec<_>>>()?;
            clifford_report(&seeds, &cfg)?
        }
        Command::Reproduce { example } => reproduce_report(*example)?,
        Command::Report { path, ops, subgroup } => pipeline(&load(path)?, ops, subgroup, &cfg)?,
    })
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(r) => {
            let _ = out.write_all(r.text.as_bytes());
            if let Some(path) = &cli.out {
                let body = serde_json::to_string_pretty(&r.json).expect("serializable") + "\n";
                if let Err(e) = std::fs::write(path, body) {
                    let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                    return 1;
                }
            }
            r.code
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            2
        }
        Err(Failure::Engine(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
