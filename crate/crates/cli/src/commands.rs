use std::fmt::Write as _;
use std::path::Path;

use apolarity::constructions::{
    betti_degree_table, extend_codimension, lex_segment_module, nonunimodal_module, sample_family_member,
    specimen_module, target_h_vector, verify_points_identity, verify_points_identity_range,
};
use apolarity::lefschetz::{wlp_probe, Evidence, WlpReport};
use apolarity::{is_unimodal, o_sequence_violation, FieldSpec, HVector, InverseSystem, RingContext};
use serde_json::{json, Value};

use crate::format::{emit_polynomial, emit_system, parse_system};
use crate::report::{write_atomic, ReportDocument};
use crate::{Cli, CliError, Command, Outcome};

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Hvec { file } => hvec(file, cli.field),
        Command::Wlp { file, trials, seed } => wlp(file, cli.field, *trials, *seed),
        Command::Specimen { e, emit } => specimen(*e, cli.field.unwrap_or_default(), emit.as_deref()),
        Command::Family { e, seed, emit } => family(*e, *seed, cli.field.unwrap_or_default(), emit.as_deref()),
        Command::Lexseg { e, count } => lexseg(*e, *count, cli.field.unwrap_or_default()),
        Command::Nonunimodal { e, codim } => nonunimodal(*e, *codim, cli.field.unwrap_or_default()),
        Command::PointsIdentity { e, range } => match (e, range) {
            (Some(e), _) => points_single(*e),
            (None, Some((a, b))) => points_range(*a, *b),
            (None, None) => Err(CliError::Usage("points-identity needs --e or --range".into())),
        },
        Command::Osequence { h } => osequence(h),
    }
}

fn read_system(path: &Path, field: Option<FieldSpec>) -> Result<(InverseSystem, Vec<u8>), CliError> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    let text =
        std::str::from_utf8(&bytes).map_err(|e| CliError::Usage(format!("{}: not UTF-8 ({e})", path.display())))?;
    Ok((parse_system(text, field)?, bytes))
}

fn emit_to(path: Option<&Path>, system: &InverseSystem) -> Result<(), CliError> {
    if let Some(path) = path {
        write_atomic(path, emit_system(system).as_bytes())
            .map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    }
    Ok(())
}

fn ring(field: FieldSpec) -> Result<RingContext, CliError> {
    Ok(RingContext::new(3, field)?)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// The common payload for a system: h-vector, socle vector and flags.
fn summary(system: &InverseSystem) -> Value {
    let h = system.h_vector();
    let s = system.socle_vector();
    let (level, socle_type) = system.is_level();
    json!({
        "num_vars": system.ring().num_vars(),
        "generators": system.generators().iter().map(emit_polynomial).collect::<Vec<_>>(),
        "socle_degree": system.socle_degree(),
        "h_vector": h,
        "socle_vector": s,
        "level": level,
        "type": socle_type,
        "socle_dimension": s.socle_type(),
        "unimodal": h.is_unimodal(),
        "o_sequence": h.is_o_sequence(),
    })
}

fn summary_text(system: &InverseSystem) -> String {
    let h = system.h_vector();
    let s = system.socle_vector();
    let (level, socle_type) = system.is_level();
    let ctx = system.ring();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "r={} field={} generators={} socle degree={}",
        ctx.num_vars(),
        ctx.field(),
        system.generators().len(),
        system.socle_degree()
    );
    let _ = writeln!(out, "{:>4} {:>8} {:>6}", "d", "h_d", "s_d");
    for (d, (hd, sd)) in h.iter().zip(s.iter()).enumerate() {
        let _ = writeln!(out, "{d:>4} {hd:>8} {sd:>6}");
    }
    let _ = writeln!(out, "h           {h}");
    let _ = writeln!(out, "socle       {s}");
    if level {
        let _ = writeln!(out, "level       yes (type {socle_type})");
    } else {
        let _ = writeln!(out, "level       no (s_e = {socle_type}, socle dimension {})", s.socle_type());
    }
    let _ = writeln!(out, "unimodal    {}", yes(h.is_unimodal()));
    let _ = writeln!(out, "O-sequence  {}", yes(h.is_o_sequence()));
    out
}

fn hvec(path: &Path, field: Option<FieldSpec>) -> Result<Outcome, CliError> {
    let (system, bytes) = read_system(path, field)?;
    let report = ReportDocument::new("hvec", &bytes, None, Some(system.field()), summary(&system));
    Ok(Outcome { report, text: summary_text(&system), passed: true })
}

fn wlp_text(r: &WlpReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "h           {}", r.h);
    let _ = writeln!(out, "{:>4} {:>8} {:>8} {:>8}", "i", "target", "best", "trials");
    for d in &r.per_degree {
        let mark = if d.best_rank < d.target { "  fails" } else { "" };
        let _ = writeln!(out, "{:>4} {:>8} {:>8} {:>8}{mark}", d.degree, d.target, d.best_rank, d.trials_used);
    }
    let _ = writeln!(out, "verdict     {:?}", r.verdict);
    let _ = writeln!(out, "failing     {:?}", r.failing_degrees());
    match &r.evidence {
        Evidence::Witness { form } => {
            let coeffs: Vec<String> = form.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "witness     l = ({})", coeffs.join(", "));
        }
        Evidence::Certificate(c) => {
            let _ = writeln!(out, "certificate {}", c.clause);
        }
        Evidence::None => {}
    }
    out
}

fn wlp(path: &Path, field: Option<FieldSpec>, trials: usize, seed: u64) -> Result<Outcome, CliError> {
    let (system, bytes) = read_system(path, field)?;
    let r = wlp_probe(&system, trials, seed)?;
    let result = json!({ "failing_degrees": r.failing_degrees(), "report": r });
    let report = ReportDocument::new("wlp", &bytes, Some(seed), Some(system.field()), result);
    Ok(Outcome { report, text: wlp_text(&r), passed: true })
}

fn args_digest(parts: &[(&str, String)]) -> Vec<u8> {
    parts.iter().map(|(k, v)| format!("{k}={v}\n")).collect::<String>().into_bytes()
}

fn with_target(mut value: Value, h: &HVector, target: &HVector) -> Value {
    value["target"] = json!(target);
    value["matches_target"] = json!(h == target);
    value
}

fn specimen(e: u32, field: FieldSpec, emit: Option<&Path>) -> Result<Outcome, CliError> {
    let system = specimen_module(e, ring(field)?)?;
    emit_to(emit, &system)?;
    let h = system.h_vector();
    let target = target_h_vector(e)?;
    let passed = h == target && system.is_level() == (true, 2);
    let input = args_digest(&[("e", e.to_string()), ("field", field.to_string())]);
    let result = with_target(summary(&system), &h, &target);
    let mut text = summary_text(&system);
    let _ = writeln!(text, "target      {target}");
    let _ = writeln!(text, "matches     {}", yes(h == target));
    Ok(Outcome { report: ReportDocument::new("specimen", &input, None, Some(field), result), text, passed })
}

fn family(e: u32, seed: u64, field: FieldSpec, emit: Option<&Path>) -> Result<Outcome, CliError> {
    let (system, witness) = sample_family_member(e, seed, ring(field)?)?;
    emit_to(emit, &system)?;
    let gens = system.generators();
    let holds = witness.holds_for(&gens[0], &gens[1])?;
    let passed = holds && system.is_level() == (true, 2);
    let h = system.h_vector();
    let target = target_h_vector(e)?;
    let mut result = with_target(summary(&system), &h, &target);
    result["witness"] = json!(witness);
    result["witness_holds"] = json!(holds);
    let input = args_digest(&[("e", e.to_string()), ("field", field.to_string())]);
    let mut text = summary_text(&system);
    let _ = writeln!(text, "target      {target}");
    let _ = writeln!(text, "matches     {}", yes(h == target));
    let _ = writeln!(text, "l1          {}", witness.l1.display_with('x'));
    let _ = writeln!(text, "l2          {}", witness.l2.display_with('x'));
    let _ = writeln!(text, "witness     {}", if holds { "l1∘F = (l1 l2)∘G = 0" } else { "does not hold" });
    Ok(Outcome { report: ReportDocument::new("family", &input, Some(seed), Some(field), result), text, passed })
}

fn lexseg(e: u32, count: Option<usize>, field: FieldSpec) -> Result<Outcome, CliError> {
    let count = count.unwrap_or(3 * e as usize);
    let system = lex_segment_module(e, count, ring(field)?)?;
    let mut result = summary(&system);
    result["count"] = json!(count);
    let input = args_digest(&[("e", e.to_string()), ("count", count.to_string()), ("field", field.to_string())]);
    Ok(Outcome {
        report: ReportDocument::new("lexseg", &input, None, Some(field), result),
        text: summary_text(&system),
        passed: true,
    })
}

fn nonunimodal(e: u32, codim: usize, field: FieldSpec) -> Result<Outcome, CliError> {
    let base = nonunimodal_module(e, ring(field)?)?;
    let system = extend_codimension(&base, codim)?;
    let h = system.h_vector();
    let passed = !h.is_unimodal() && system.is_level().0;
    let mut result = summary(&system);
    result["codim"] = json!(codim);
    let input = args_digest(&[("e", e.to_string()), ("codim", codim.to_string()), ("field", field.to_string())]);
    Ok(Outcome {
        report: ReportDocument::new("nonunimodal", &input, None, Some(field), result),
        text: summary_text(&system),
        passed,
    })
}

fn points_single(e: u32) -> Result<Outcome, CliError> {
    let table = betti_degree_table(e)?;
    let identity = verify_points_identity(e)?;
    let passed = identity.matches_target;
    let mut text = String::new();
    let _ = writeln!(text, "generators  {:?}", table.gen_degrees);
    let _ = writeln!(text, "syzygies    {:?}", table.first_syzygy_degrees);
    let _ = writeln!(text, "second      {:?}", table.second_syzygy_degrees);
    let _ = writeln!(text, "h           {}", identity.h);
    let _ = writeln!(text, "{} e={e}", if passed { "ok" } else { "FAIL" });
    let result = json!({ "betti": table, "identity": identity, "ok": passed });
    let input = args_digest(&[("e", e.to_string())]);
    Ok(Outcome { report: ReportDocument::new("points-identity", &input, None, None, result), text, passed })
}

fn points_range(a: u32, b: u32) -> Result<Outcome, CliError> {
    if a < 2 {
        return Err(CliError::Usage(format!("range must start at e >= 2, got {a}")));
    }
    let mut text = String::new();
    let mut entries = Vec::new();
    let mut passed = true;
    for (e, outcome) in verify_points_identity_range(a..=b) {
        match outcome {
            Ok(id) => {
                let ok = id.matches_target;
                passed &= ok;
                let _ = writeln!(text, "{} e={e} h={}", if ok { "ok" } else { "FAIL" }, id.h);
                entries.push(json!({ "e": e, "ok": ok, "h": id.h }));
            }
            Err(err) => {
                passed = false;
                let _ = writeln!(text, "FAIL e={e} {err}");
                entries.push(json!({ "e": e, "ok": false, "error": err.to_string() }));
            }
        }
    }
    let result = json!({ "range": [a, b], "all_ok": passed, "entries": entries });
    let input = args_digest(&[("range", format!("{a}..{b}"))]);
    Ok(Outcome { report: ReportDocument::new("points-identity", &input, None, None, result), text, passed })
}

fn osequence(raw: &str) -> Result<Outcome, CliError> {
    let h = raw
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| CliError::Usage(format!("bad entry {s:?} in --h"))))
        .collect::<Result<Vec<_>, _>>()?;
    let violation = o_sequence_violation(&h);
    let unimodal = is_unimodal(&h);
    let hv = HVector::new(h.clone());
    let mut text = String::new();
    let _ = writeln!(text, "h           {hv}");
    let _ = writeln!(text, "O-sequence  {}", yes(violation.is_none()));
    if let Some(v) = violation {
        let _ = writeln!(text, "violation   h_{} = {} exceeds bound {}", v.degree, v.value, v.bound);
    }
    let _ = writeln!(text, "unimodal    {}", yes(unimodal));
    let result = json!({ "h": hv, "o_sequence": violation.is_none(), "violation": violation, "unimodal": unimodal });
    let input = args_digest(&[("h", h.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))]);
    Ok(Outcome {
        report: ReportDocument::new("osequence", &input, None, None, result),
        text,
        passed: violation.is_none(),
    })
}
