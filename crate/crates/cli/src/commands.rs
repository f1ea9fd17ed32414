use crate::input::{load, type_of, InputRecord};
use crate::{Command, CorpusAction, LatticeMode, Prop};
use latres_core::abelian::{ab_cohomology_report, verify_cor_4_3_dual, verify_kamb_star, verify_prop_4_2_dual};
use latres_core::cohomology::{is_coflasque, is_flasque, tate, FlasqueReport};
use latres_core::corpus::{self, Corpus};
use latres_core::module::permutation_module;
use latres_core::reductive::{
    compare_resolutions, flasque_resolution, flasque_resolution_with, invertibility_flag, pi1, pi1_check,
    verify_cover_exactness, verify_functoriality, verify_prop_3_4, verify_prop_3_9, verify_theorem_3_14,
    CoverGenerators, ModuleView,
};
use latres_core::resolutions::{coflasque_resolution, flasque_cover, flasque_quotient_embedding};
use latres_core::rootdatum::{DatumSequence, GroupDatum};
use latres_core::schema::{DatumDoc, GroupDoc, ModuleDoc, SequenceDoc};
use latres_core::{AuditMode, Config, DModule, Error, Result};
use serde::Serialize;
use serde_json::{json, Value};

pub struct Outcome {
    pub inputs: Vec<InputRecord>,
    pub result: Value,
    pub lines: Vec<String>,
    /// Printed verbatim in text mode instead of the summary.
    pub raw: Option<String>,
}

fn outcome(inputs: Vec<InputRecord>, result: impl Serialize, lines: Vec<String>) -> Result<Outcome> {
    Ok(Outcome {
        inputs,
        result: serde_json::to_value(result).map_err(|e| Error::Input(format!("serialization failed: {e}")))?,
        lines,
        raw: None,
    })
}

fn module(arg: &str, role: &str, cfg: &Config) -> Result<(DModule, InputRecord)> {
    let (doc, rec) = load::<ModuleDoc>(arg, "module", role)?;
    Ok((doc.build(&Corpus, cfg)?, rec))
}

fn datum(arg: &str, cfg: &Config) -> Result<(GroupDatum, InputRecord)> {
    let (doc, rec) = load::<DatumDoc>(arg, "datum", "datum")?;
    Ok((doc.build(&Corpus, cfg)?, rec))
}

fn sequence(arg: &str, cfg: &Config) -> Result<(DatumSequence, InputRecord)> {
    let (doc, rec) = load::<SequenceDoc>(arg, "sequence", "sequence")?;
    Ok((doc.build(&Corpus, cfg)?, rec))
}

fn flasque_line(name: &str, r: &FlasqueReport, degree: i64) -> String {
    if r.torsion_warning {
        return format!("{name}: not applicable (module has torsion)");
    }
    match r.failures().first() {
        None => format!("{name}: yes"),
        Some(w) => format!(
            "{name}: no (H^{degree} = {} on subgroup {:?})",
            w.class,
            w.subgroup.elements()
        ),
    }
}

/// Every `{stage, holds}` object in a report, in document order.
fn stage_lines(v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(m) => {
            if let (Some(Value::String(s)), Some(Value::Bool(h))) = (m.get("stage"), m.get("holds")) {
                out.push(format!("{} {s}", if *h { "PASS" } else { "FAIL" }));
                return;
            }
            if let (Some(Value::Array(nodes)), Some(Value::Bool(h))) = (m.get("nodes"), m.get("exact")) {
                let seq: Vec<String> = nodes
                    .iter()
                    .map(|n| {
                        let class = serde_json::from_value::<Vec<i64>>(n["class"].clone()).unwrap_or_default();
                        let c = if class.is_empty() {
                            "0".to_string()
                        } else {
                            class.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" + ")
                        };
                        format!("{} = {c}", n["label"].as_str().unwrap_or("?"))
                    })
                    .collect();
                out.push(format!("{} {}", if *h { "PASS" } else { "FAIL" }, seq.join(" -> ")));
                return;
            }
            for x in m.values() {
                stage_lines(x, out);
            }
        }
        Value::Array(a) => a.iter().for_each(|x| stage_lines(x, out)),
        _ => {}
    }
}

fn verified(inputs: Vec<InputRecord>, result: impl Serialize, mut lines: Vec<String>) -> Result<Outcome> {
    let mut o = outcome(inputs, result, Vec::new())?;
    stage_lines(&o.result, &mut lines);
    o.lines = lines;
    Ok(o)
}

#[derive(Serialize)]
struct LatticeResolution {
    left: ModuleView,
    middle: ModuleView,
    right: ModuleView,
    iota: latres_core::Matrix,
    pi: latres_core::Matrix,
    flags: [latres_core::resolutions::TermFlags; 3],
}

pub fn run(cmd: &Command, cfg: &Config) -> Result<Outcome> {
    match cmd {
        Command::Tate {
            group,
            module: m,
            degree,
            subgroups,
        } => {
            let (m, rec) = module(m, "module", cfg)?;
            let mut inputs = vec![rec];
            if let Some(g) = group {
                let (doc, rec) = load::<GroupDoc>(g, "group", "group")?;
                if doc.build(cfg)?.table() != m.group().table() {
                    return Err(Error::Input("the module is over a different group".to_string()));
                }
                inputs.insert(0, rec);
            }
            let g = m.group();
            let class = tate(&g.whole(), &m, *degree, cfg)?;
            let mut lines = vec![format!("H^{degree} = {class}")];
            let mut per = Vec::new();
            if *subgroups {
                let lat = g.subgroups(cfg)?;
                let list: Vec<_> = match cfg.audit {
                    AuditMode::Representatives => lat.representatives(),
                    AuditMode::Full => lat.all.iter().collect(),
                };
                for h in list {
                    let c = tate(h, &m, *degree, cfg)?;
                    lines.push(format!("subgroup {:?}: {c}", h.elements()));
                    per.push(json!({"subgroup": h.elements(), "class": c}));
                }
            }
            outcome(
                inputs,
                json!({"degree": degree, "class": class, "subgroups": per}),
                lines,
            )
        }
        Command::FlasqueCheck { module: m } => {
            let (m, rec) = module(m, "module", cfg)?;
            let f = is_flasque(&m, cfg)?;
            let c = is_coflasque(&m, cfg)?;
            let lines = vec![flasque_line("flasque", &f, -1), flasque_line("coflasque", &c, 1)];
            outcome(vec![rec], json!({"flasque": f, "coflasque": c}), lines)
        }
        Command::ResolveLattice { module: m, mode } => {
            let (m, rec) = module(m, "module", cfg)?;
            let t = match mode {
                LatticeMode::Coflasque => coflasque_resolution(&m, cfg)?,
                LatticeMode::FlasqueQuotient => flasque_quotient_embedding(&m, cfg)?,
                LatticeMode::FlasqueCover => flasque_cover(&m, cfg)?,
            };
            let lines = vec![format!(
                "0 -> rank {} -> rank {} -> {} -> 0: exact",
                t.left.ngens(),
                t.middle.ngens(),
                t.right.invariants()
            )];
            let view = LatticeResolution {
                left: ModuleView::of(&t.left),
                middle: ModuleView::of(&t.middle),
                right: ModuleView::of(&t.right),
                iota: t.iota.matrix().clone(),
                pi: t.pi.matrix().clone(),
                flags: t.flags,
            };
            outcome(vec![rec], view, lines)
        }
        Command::ResolveGroup { datum: d } => {
            let (gd, rec) = datum(d, cfg)?;
            let res = flasque_resolution(&gd, cfg)?;
            let inv = invertibility_flag(&res, cfg)?;
            let lines = vec![
                format!("Rch rank {} (permutation)", res.rch.ngens()),
                format!("Fch rank {} (flasque)", res.fch.ngens()),
                "0 -> X0 -> Rch -> Fch -> mu -> 0: exact".to_string(),
                format!("invertibility: {inv:?}"),
            ];
            outcome(vec![rec], json!({"record": res.view(), "invertibility": inv}), lines)
        }
        Command::Pi1 { datum: d } => {
            let (gd, rec) = datum(d, cfg)?;
            let res = flasque_resolution(&gd, cfg)?;
            let pi = pi1(&res)?;
            let check = pi1_check(&res, &pi, cfg)?;
            if !check.holds() {
                return Err(Error::verification("cocharacter oracle", format!("{check:?}")));
            }
            let lines = vec![
                format!("pi1 = {}", pi.module.invariants()),
                "cocharacter oracle: match".to_string(),
            ];
            outcome(vec![rec], json!({"pi1": pi.module.invariants(), "check": check}), lines)
        }
        Command::Verify {
            prop,
            input,
            datum: d,
            sequence: s,
        } => verify(*prop, input.as_deref(), d.as_deref(), s.as_deref(), cfg),
        Command::Abcoh { datum: d, degree } => {
            let (gd, rec) = datum(d, cfg)?;
            let degrees: Vec<i64> = match degree {
                Some(i) => vec![*i],
                None => (-1..=2).collect(),
            };
            let r = ab_cohomology_report(&gd, &degrees, cfg)?;
            let mut lines: Vec<String> = r
                .rows
                .iter()
                .map(|row| format!("HH^{} = {}", row.degree, row.class))
                .collect();
            lines.push(format!(
                "long exact sequences: {}",
                if r.holds() { "exact" } else { "not exact" }
            ));
            outcome(vec![rec], r, lines)
        }
        Command::Corpus { action } => corpus_command(action, cfg),
    }
}

fn needs(prop: Prop) -> &'static str {
    match prop {
        Prop::CoverWeights | Prop::CoverSixTerm | Prop::Functoriality | Prop::Exactness => "sequence",
        _ => "datum",
    }
}

fn verify(prop: Prop, input: Option<&str>, d: Option<&str>, s: Option<&str>, cfg: &Config) -> Result<Outcome> {
    let want = needs(prop);
    let arg = match (want, d, s, input) {
        ("datum", Some(a), _, _) | ("sequence", _, Some(a), _) => a,
        (_, _, _, Some(a)) => {
            let ty = type_of(a)?;
            if ty != want {
                return Err(Error::Input(format!("this verification needs a {want}, not a {ty}")));
            }
            a
        }
        _ => return Err(Error::Input(format!("this verification needs --{want} or --input"))),
    };
    if want == "sequence" {
        let (seq, rec) = sequence(arg, cfg)?;
        let inputs = vec![rec];
        return match prop {
            Prop::Exactness => {
                let r = verify_theorem_3_14(&seq, cfg)?;
                let pis: Vec<String> = r.pi1.iter().map(ToString::to_string).collect();
                verified(inputs, &r, vec![format!("0 -> {} -> 0", pis.join(" -> "))])
            }
            Prop::Functoriality => verified(inputs, verify_functoriality(&seq, cfg)?, Vec::new()),
            Prop::CoverWeights => {
                let r = verify_cover_exactness(&seq, cfg)?;
                let line = format!(
                    "0 -> P3 -> P2 -> P1 -> 0: {}",
                    if r.weights_exact { "exact" } else { "not exact" }
                );
                verified(inputs, json!({"weights_exact": r.weights_exact}), vec![line])
            }
            _ => {
                let r = verify_cover_exactness(&seq, cfg)?;
                let terms: Vec<String> = r.terms.iter().map(|(n, a)| format!("{n} = {}", a)).collect();
                verified(inputs, &r, vec![terms.join(", ")])
            }
        };
    }
    let (gd, rec) = datum(arg, cfg)?;
    let inputs = vec![rec];
    if prop == Prop::AbCohSequence {
        return verified(inputs, verify_kamb_star(&gd, cfg)?, Vec::new());
    }
    let res = flasque_resolution(&gd, cfg)?;
    match prop {
        Prop::CenterRoof => verified(inputs, verify_prop_3_4(&res, cfg)?, Vec::new()),
        Prop::TorsionCoradical => verified(inputs, verify_prop_3_9(&res, cfg)?, Vec::new()),
        Prop::Comparison => {
            let g = gd.group();
            let redundant = flasque_resolution_with(&gd, CoverGenerators::Redundant, cfg)?;
            let stabilized = res.stabilized(&permutation_module(g, &[(g.trivial_subgroup(), 1)]))?;
            let mut rows = Vec::new();
            for (label, other) in [("reordered", &redundant), ("stabilized", &stabilized)] {
                let c = compare_resolutions(&res, other, cfg)?;
                if !c.holds() {
                    return Err(Error::verification(
                        format!("comparison with the {label} resolution"),
                        format!("{c:?}"),
                    ));
                }
                rows.push(
                    json!({"stage": format!("explicit iso with the {label} resolution"), "holds": true, "detail": c}),
                );
            }
            verified(inputs, json!({"comparisons": rows}), Vec::new())
        }
        Prop::ResolutionAbCoh => {
            let r = verify_prop_4_2_dual(&res, cfg)?;
            let lines = r
                .rows
                .iter()
                .map(|(i, a, _)| format!("HH^{i} = {a} on both sides"))
                .collect();
            verified(inputs, r, lines)
        }
        Prop::KernelCokernel => {
            let r = verify_cor_4_3_dual(&res, cfg)?;
            let lines = vec![format!("ker = {}, coker = {}", r.kernel, r.cokernel)];
            verified(inputs, r, lines)
        }
        _ => unreachable!("sequence verifications return above"),
    }
}

fn corpus_command(action: &CorpusAction, cfg: &Config) -> Result<Outcome> {
    match action {
        CorpusAction::List => {
            let mut entries = Vec::new();
            let mut lines = Vec::new();
            for n in corpus::list() {
                let ty = corpus::get(n)?.type_name();
                lines.push(format!("{n}\t{ty}"));
                entries.push(json!({"name": n, "type": ty}));
            }
            outcome(Vec::new(), entries, lines)
        }
        CorpusAction::Get { name } => {
            let text = corpus::text(name)?;
            let doc: Value = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
            let mut o = outcome(Vec::new(), json!({"name": name, "document": doc}), Vec::new())?;
            o.raw = Some(text.to_string());
            Ok(o)
        }
        CorpusAction::Check => {
            let mut rows = Vec::new();
            let mut lines = Vec::new();
            for n in corpus::list() {
                let doc = corpus::get(n)?;
                corpus::validate(&doc, cfg)
                    .map_err(|e| Error::verification(format!("corpus entry {n}"), e.to_string()))?;
                let same = corpus::canonical(&doc)? == corpus::text(n)?;
                if !same {
                    return Err(Error::verification(format!("corpus entry {n}"), "does not round-trip"));
                }
                lines.push(format!("PASS {n}"));
                rows.push(json!({"name": n, "valid": true, "round_trip": true}));
            }
            outcome(Vec::new(), rows, lines)
        }
    }
}
