//! Command dispatch, error mapping and output.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde_json::{json, Value};

use realpencil::algebra::{ProjPoint, TernaryForm};
use realpencil::error::Error;
use realpencil::fixtures;
use realpencil::invariants::{
    check_partition_against_theory, gabard_bound, harnack_bound, m2_sepgon_range, semigroup_cones, SepgonCase,
};
use realpencil::io::{certificate_to_json, parse_pencil, parse_point, pencil_to_json, CurveDocument};
use realpencil::orientation::{
    classify_with_topology, induced_orientation, oval_signs, Conclusion, Direction, OvalSign, Position, QuinticVerdict,
};
use realpencil::pencil::{
    build_pencil, certify_totally_real_seeded, degree_partition, search_totally_real_pencil, AttemptOutcome,
    BaseStrategy, Pencil, SearchStrategy,
};
use realpencil::topology::{classify_m_label, compute_topology_with, genus, ComponentKind, CurveTopology, TopologyOptions};

use crate::exit;
use crate::render::{render_svg, Overlay, TriangleOverlay};
use crate::report::{linear_json, point_json, point_text, InputDigest, RunReport};
use crate::{BoundsArgs, Cli, Command, FixturesCommand, Format, Global, PencilCommand, QuinticCommand, RenderArgs, SearchArgs, Strategy};

pub struct Fail {
    pub code: u8,
    pub message: String,
}

impl Fail {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Fail { code, message: message.into() }
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse { .. } => exit::PARSE,
            Error::Singular(_) => exit::SINGULAR,
            Error::Precondition(_)
            | Error::OutOfRange(_)
            | Error::InvalidForm(_)
            | Error::NoPencil(_)
            | Error::HarnackViolation { .. }
            | Error::NestedOvals
            | Error::ZeroPoint => exit::INVALID,
            Error::NotTotallyReal => exit::NOT_TOTALLY_REAL,
            _ => exit::FAILURE,
        };
        Fail { code, message: e.to_string() }
    }
}

type Res<T> = std::result::Result<T, Fail>;

/// What a successful command hands back for output.
pub struct Outcome {
    code: u8,
    text: Vec<String>,
    result: Value,
    /// File content written by `--output` instead of the report.
    artifact: Option<String>,
}

impl Outcome {
    fn ok(text: Vec<String>, result: Value) -> Self {
        Outcome { code: exit::OK, text, result, artifact: None }
    }
}

struct Ctx {
    global: Global,
    inputs: Vec<InputDigest>,
    timings: BTreeMap<String, u128>,
}

impl Ctx {
    fn read(&mut self, path: &Path) -> Res<String> {
        let bytes = fs::read(path).map_err(|e| Fail::new(exit::PARSE, format!("cannot read {}: {e}", path.display())))?;
        self.inputs.push(InputDigest::of(path, &bytes));
        String::from_utf8(bytes).map_err(|_| Fail::new(exit::PARSE, format!("{} is not UTF-8", path.display())))
    }

    fn curve(&mut self, path: &Path) -> Res<(CurveDocument, TernaryForm)> {
        let text = self.read(path)?;
        let doc = CurveDocument::parse(&text).map_err(|e| located(path, e))?;
        let form = doc.form()?;
        Ok((doc, form))
    }

    fn timed<T>(&mut self, label: &str, f: impl FnOnce() -> T) -> T {
        let t0 = Instant::now();
        let out = f();
        self.timings.insert(label.into(), t0.elapsed().as_millis());
        out
    }

    fn topology(&mut self, form: &TernaryForm) -> Res<CurveTopology> {
        let opts = TopologyOptions { seed: self.global.seed, ..TopologyOptions::default() };
        Ok(self.timed("topology", || compute_topology_with(form, opts))?)
    }
}

fn located(path: &Path, e: Error) -> Fail {
    let mut f = Fail::from(e);
    f.message = format!("{}: {}", path.display(), f.message);
    f
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Topology { .. } => "topology",
        Command::Pencil(PencilCommand::Build { .. }) => "pencil build",
        Command::Pencil(PencilCommand::Certify { .. }) => "pencil certify",
        Command::Pencil(PencilCommand::Search(_)) => "pencil search",
        Command::Quintic(_) => "quintic classify",
        Command::Bounds(_) => "bounds",
        Command::Render(_) => "render",
        Command::Fixtures(_) => "fixtures",
    }
}

pub fn run(cli: Cli) -> u8 {
    let name = command_name(&cli.command);
    let mut ctx = Ctx { global: cli.global.clone(), inputs: Vec::new(), timings: BTreeMap::new() };
    let res = match cli.command {
        Command::Topology { curve } => topology(&mut ctx, &curve),
        Command::Pencil(PencilCommand::Build { curve, points, degree }) => build(&mut ctx, &curve, &points, &degree),
        Command::Pencil(PencilCommand::Certify { curve, pencil }) => certify(&mut ctx, &curve, &pencil),
        Command::Pencil(PencilCommand::Search(args)) => search(&mut ctx, &args),
        Command::Quintic(QuinticCommand::Classify { curve, no_orientation, budget }) => {
            quintic(&mut ctx, &curve, !no_orientation, budget)
        }
        Command::Bounds(args) => bounds(&args),
        Command::Render(args) => render(&mut ctx, &args),
        Command::Fixtures(cmd) => fixtures_cmd(&cmd),
    };
    let global = ctx.global.clone();
    let mut report = |code: u8, error: Option<String>, result: Value| RunReport {
        command: name.into(),
        version: env!("CARGO_PKG_VERSION"),
        seed: global.seed,
        inputs: std::mem::take(&mut ctx.inputs),
        exit_code: code,
        error,
        result,
        timings_ms: global.timings.then(|| ctx.timings.clone()),
    };
    match res {
        Ok(out) => {
            let rendered = match global.format {
                Format::Text => {
                    let mut s = out.text.join("\n");
                    s.push('\n');
                    s
                }
                Format::Machine => report(out.code, None, out.result).to_json(),
            };
            print!("{rendered}");
            if let Some(path) = &global.output {
                let content = out.artifact.unwrap_or(rendered);
                if let Err(e) = fs::write(path, content) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return exit::FAILURE;
                }
            }
            out.code
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            if global.format == Format::Machine {
                print!("{}", report(f.code, Some(f.message), Value::Null).to_json());
            }
            f.code
        }
    }
}

fn plural(n: usize, word: &str) -> String {
    if n == 1 {
        format!("1 {word}")
    } else {
        format!("{n} {word}s")
    }
}

/// `"pseudo-line + 4 ovals, no nesting"` and the like.
pub fn census_phrase(topo: &CurveTopology) -> String {
    let census = topo.census();
    if topo.components.is_empty() {
        return "0 components".into();
    }
    let mut parts = Vec::new();
    if census.pseudo_lines > 0 {
        parts.push("pseudo-line".to_string());
    }
    if census.ovals > 0 {
        parts.push(plural(census.ovals, "oval"));
    }
    let mut s = parts.join(" + ");
    if census.ovals > 1 {
        if topo.has_nesting() {
            let depths: Vec<String> = census.depths.iter().map(|d| d.to_string()).collect();
            s.push_str(&format!(", nested (depths {})", depths.join(", ")));
        } else {
            s.push_str(", no nesting");
        }
    }
    s
}

fn kind_name(k: ComponentKind) -> &'static str {
    match k {
        ComponentKind::Oval => "oval",
        ComponentKind::PseudoLine => "pseudo-line",
    }
}

fn topology(ctx: &mut Ctx, path: &Path) -> Res<Outcome> {
    let (doc, form) = ctx.curve(path)?;
    let topo = ctx.topology(&form)?;
    let label = classify_m_label(&topo)?;
    let phrase = census_phrase(&topo);
    let name = doc.name().map(str::to_string).unwrap_or_else(|| path.display().to_string());
    let mut text = vec![
        format!("curve: {name}, degree {}, genus {}", topo.degree, topo.genus),
        phrase.clone(),
        if label.i == 0 { "M-curve".to_string() } else { format!("(M-{})-curve", label.i) },
    ];
    let mut comps = Vec::new();
    for (i, c) in topo.components.iter().enumerate() {
        let depth = topo.depth(i);
        let role = match c.kind {
            ComponentKind::Oval => "interior point",
            ComponentKind::PseudoLine => "point off the curve",
        };
        text.push(format!("  {i}: {}, depth {depth}, {role} {}", kind_name(c.kind), point_text(&c.witness)));
        comps.push(json!({
            "index": i,
            "kind": kind_name(c.kind),
            "depth": depth,
            "parent": topo.nesting[i],
            "witness": point_json(&c.witness),
        }));
    }
    let census = topo.census();
    let result = json!({
        "degree": topo.degree,
        "genus": topo.genus,
        "summary": phrase,
        "m_label": label.i,
        "census": census,
        "components": comps,
    });
    Ok(Outcome::ok(text, result))
}

fn pencil_degree(spec: &str, d: u32) -> Res<Option<u32>> {
    if spec == "auto" {
        if d < 4 {
            return Err(Fail::new(exit::INVALID, format!("automatic pencil degree d - 3 needs d >= 4, got {d}")));
        }
        return Ok(None);
    }
    let k: u32 = spec.parse().map_err(|_| Fail::new(exit::INVALID, format!("invalid degree '{spec}'")))?;
    if k == 0 || k >= d {
        return Err(Fail::new(exit::INVALID, format!("pencil degree {k} must lie in 1..{d}")));
    }
    Ok(Some(k))
}

fn parse_points(s: &str) -> Res<Vec<ProjPoint>> {
    s.split(',')
        .map(|p| {
            let parts: Vec<String> = p.trim().split(':').map(|c| c.trim().to_string()).collect();
            let coords: [String; 3] = parts
                .try_into()
                .map_err(|_| Fail::new(exit::INVALID, format!("point '{p}' is not of the form x:y:z")))?;
            Ok(parse_point(&coords)?)
        })
        .collect()
}

fn build(ctx: &mut Ctx, path: &Path, points: &str, degree: &str) -> Res<Outcome> {
    let (_, form) = ctx.curve(path)?;
    let d = form.degree();
    let k = pencil_degree(degree, d)?.unwrap_or(d.saturating_sub(3));
    let pts = parse_points(points)?;
    let p = build_pencil(&pts, k)?;
    let text = vec![
        format!("pencil of degree {k} through {}", plural(pts.len(), "point")),
        format!("f = {}", p.f),
        format!("g = {}", p.g),
    ];
    let artifact = pencil_to_json(&p);
    let result: Value = serde_json::from_str(&artifact).expect("pencil JSON");
    Ok(Outcome { code: exit::OK, text, result, artifact: Some(artifact) })
}

fn certificate_outcome(cert_json: String, totally_real: bool, witness: Option<String>, critical: usize) -> Outcome {
    let mut text = vec![if totally_real { "verdict: totally-real".to_string() } else { "verdict: not-totally-real".to_string() }];
    if let Some(w) = witness {
        text.push(format!("witness parameter: {w}"));
    }
    text.push(format!("critical parameters: {critical}"));
    let result: Value = serde_json::from_str(&cert_json).expect("certificate JSON");
    Outcome {
        code: if totally_real { exit::OK } else { exit::NOT_TOTALLY_REAL },
        text,
        result,
        artifact: Some(cert_json),
    }
}

fn certify(ctx: &mut Ctx, path: &Path, pencil: &Path) -> Res<Outcome> {
    let (_, form) = ctx.curve(path)?;
    let text = ctx.read(pencil)?;
    let p = parse_pencil(&text).map_err(|e| located(pencil, e))?;
    let seed = ctx.global.seed;
    let cert = ctx.timed("certify", || certify_totally_real_seeded(&form, &p, seed))?;
    Ok(certificate_outcome(
        certificate_to_json(&cert),
        cert.is_totally_real(),
        cert.witness.as_ref().map(|w| w.to_string()),
        cert.critical.len(),
    ))
}

fn outcome_name(o: &AttemptOutcome) -> String {
    match o {
        AttemptOutcome::TotallyReal => "totally-real".into(),
        AttemptOutcome::NotTotallyReal => "not-totally-real".into(),
        AttemptOutcome::NoPencil => "no-pencil".into(),
        AttemptOutcome::Failed(m) => format!("failed: {m}"),
    }
}

fn base_strategy(doc: &CurveDocument, s: Strategy) -> Res<BaseStrategy> {
    let points = doc.points()?;
    Ok(match s {
        Strategy::Witness => BaseStrategy::Witness,
        Strategy::Points if points.is_empty() => {
            return Err(Fail::new(exit::INVALID, "the curve file lists no points"));
        }
        Strategy::Points => BaseStrategy::OnCurve(points),
        Strategy::Auto if points.is_empty() => BaseStrategy::Witness,
        Strategy::Auto => BaseStrategy::OnCurve(points),
    })
}

fn write_file(path: &Path, content: &str) -> Res<()> {
    fs::write(path, content).map_err(|e| Fail::new(exit::FAILURE, format!("cannot write {}: {e}", path.display())))
}

fn search(ctx: &mut Ctx, args: &SearchArgs) -> Res<Outcome> {
    let (doc, form) = ctx.curve(&args.curve)?;
    let degree = pencil_degree(&args.degree, form.degree())?;
    let base = base_strategy(&doc, args.strategy)?;
    let strategy_name = if base == BaseStrategy::Witness { "witness" } else { "points" };
    let topo = ctx.topology(&form)?;
    let strategy = SearchStrategy {
        base,
        degree,
        budget: args.budget,
        max_results: args.max_results.max(1),
        seed: ctx.global.seed,
        ..SearchStrategy::default()
    };
    let out = ctx.timed("search", || search_totally_real_pencil(&form, &topo, &strategy))?;
    let mut text = vec![format!(
        "searched {} with pencils of degree {}: {} found",
        plural(out.attempts.len(), "base configuration"),
        out.degree,
        out.found.len()
    )];
    let attempts: Vec<Value> = out
        .attempts
        .iter()
        .map(|a| {
            let pts: Vec<String> = a.base_points.iter().map(point_text).collect();
            text.push(format!("  components {:?} at {}: {}", a.components, pts.join(" "), outcome_name(&a.outcome)));
            json!({
                "components": a.components,
                "base_points": a.base_points.iter().map(point_json).collect::<Vec<_>>(),
                "outcome": outcome_name(&a.outcome),
            })
        })
        .collect();
    let found: Vec<Value> = out
        .found
        .iter()
        .map(|(p, _)| json!({ "base_points": p.base_points.iter().map(point_json).collect::<Vec<_>>() }))
        .collect();
    if let Some(dir) = &args.save_all {
        fs::create_dir_all(dir).map_err(|e| Fail::new(exit::FAILURE, format!("cannot create {}: {e}", dir.display())))?;
        for (i, (p, cert)) in out.found.iter().enumerate() {
            write_file(&dir.join(format!("pencil-{i:02}.json")), &pencil_to_json(p))?;
            write_file(&dir.join(format!("certificate-{i:02}.json")), &certificate_to_json(cert))?;
        }
    }
    let result = json!({
        "strategy": strategy_name,
        "degree": out.degree,
        "found": found,
        "attempts": attempts,
        "exhausted": out.exhausted(),
    });
    if out.exhausted() {
        text.push("exhausted: no totally real pencil among the attempts".into());
        return Ok(Outcome { code: exit::EXHAUSTED, text, result, artifact: None });
    }
    let artifact = Some(pencil_to_json(&out.found[0].0));
    Ok(Outcome { code: exit::OK, text, result, artifact })
}

fn position_name(p: Position) -> &'static str {
    match p {
        Position::Convex => "convex",
        Position::NonConvex => "non-convex",
        Position::Inapplicable => "inapplicable",
    }
}

fn conclusion_name(c: Conclusion) -> &'static str {
    match c {
        Conclusion::Separating => "separating",
        Conclusion::NonSeparating => "non-separating",
        Conclusion::Unknown => "unknown",
    }
}

fn verdict_json(v: &QuinticVerdict) -> Value {
    let triangle = v.triangle.as_ref().map(|t| {
        json!({
            "inner": t.inner,
            "inner_point": point_json(&t.inner_point),
            "vertices": t.vertices,
            "points": t.points.iter().map(|p| Value::from(t_point(p))).collect::<Vec<_>>(),
            "lines": t.lines.iter().map(linear_json).collect::<Vec<_>>(),
            "segment_signs": t.segment_signs,
        })
    });
    json!({
        "position": position_name(v.position),
        "conclusion": conclusion_name(v.conclusion),
        "triangle": triangle,
    })
}

/// Coordinates exactly as stored: segment signs refer to these representatives.
fn t_point(p: &ProjPoint) -> Vec<String> {
    p.0.iter().map(|c| c.to_string()).collect()
}

fn flag_char(d: Direction) -> &'static str {
    match d {
        Direction::Forward => "+",
        Direction::Backward => "-",
    }
}

fn sign_name(s: Option<OvalSign>) -> &'static str {
    match s {
        Some(OvalSign::Positive) => "positive",
        Some(OvalSign::Negative) => "negative",
        None => "pseudo-line",
    }
}

/// Orientation, oval signs and partition check from the first certified pencil.
fn orientation_section(ctx: &mut Ctx, doc: &CurveDocument, form: &TernaryForm, topo: &CurveTopology, budget: usize) -> Res<(Vec<String>, Value)> {
    let base = base_strategy(doc, Strategy::Auto)?;
    let strategy = SearchStrategy { base, budget, seed: ctx.global.seed, ..SearchStrategy::default() };
    let out = ctx.timed("orientation search", || search_totally_real_pencil(form, topo, &strategy))?;
    let Some((p, cert)) = out.found.first() else {
        return Err(Fail::new(exit::FAILURE, "no totally real pencil found to orient the curve"));
    };
    let o = induced_orientation(form, topo, p, cert)?;
    let signs = oval_signs(topo, &o)?;
    let dp = degree_partition(form, topo, p, cert)?;
    let report = check_partition_against_theory(topo, &dp, Some(&signs));
    let flags: Vec<&str> = o.flags.iter().map(|&d| flag_char(d)).collect();
    let names: Vec<&str> = signs.signs.iter().map(|&s| sign_name(s)).collect();
    let text = vec![
        format!("orienting pencil through {}", p.base_points.iter().map(point_text).collect::<Vec<_>>().join(" ")),
        format!("orientation flags: {}", flags.join(" ")),
        format!("oval signs: {}", names.join(", ")),
        format!(
            "degree partition: {:?} ({})",
            dp.entries,
            if report.consistent() { "consistent" } else { "inconsistent" }
        ),
    ];
    let value = json!({
        "pencil_base_points": p.base_points.iter().map(point_json).collect::<Vec<_>>(),
        "flags": o.flags,
        "oval_signs": signs.signs,
        "degree_partition": dp.entries,
        "partition_report": report,
    });
    Ok((text, value))
}

fn quintic(ctx: &mut Ctx, path: &Path, orient: bool, budget: usize) -> Res<Outcome> {
    let (doc, form) = ctx.curve(path)?;
    if form.degree() != 5 {
        return Err(Fail::new(exit::INVALID, format!("quintic classify needs degree 5, got {}", form.degree())));
    }
    let topo = ctx.topology(&form)?;
    let v = ctx.timed("position", || classify_with_topology(&form, &topo))?;
    let pos = position_name(v.position);
    let concl = conclusion_name(v.conclusion);
    let mut text = vec![format!("components: {}", census_phrase(&topo))];
    text.push(match v.position {
        Position::Inapplicable => format!("verdict: inapplicable ({}), conclusion unknown", plural(topo.components.len(), "component")),
        _ => format!("verdict: {pos} ⇒ {concl}"),
    });
    if let Some(t) = &v.triangle {
        text.push(format!("triangle: oval {} inside the triangle of ovals {:?}", t.inner, t.vertices));
        for (l, s) in t.lines.iter().zip(t.segment_signs) {
            text.push(format!("  line {l} (segment sign {s:+})"));
        }
    }
    let mut result = verdict_json(&v);
    if orient && v.conclusion == Conclusion::Separating {
        match orientation_section(ctx, &doc, &form, &topo, budget) {
            Ok((lines, value)) => {
                text.extend(lines);
                result["orientation"] = value;
            }
            Err(f) => {
                text.push(format!("orientation: unavailable ({})", f.message));
                result["orientation"] = json!({ "error": f.message });
            }
        }
    }
    Ok(Outcome::ok(text, result))
}

fn parse_case(s: &str) -> Res<SepgonCase> {
    match s {
        "g" => Ok(SepgonCase::G),
        "g-1" => Ok(SepgonCase::GMinusOne),
        "unknown" => Ok(SepgonCase::Unknown),
        _ => Err(Fail::new(exit::INVALID, format!("case must be g, g-1 or unknown, got '{s}'"))),
    }
}

fn bounds(args: &BoundsArgs) -> Res<Outcome> {
    if args.degree.is_none() && args.genus.is_none() && args.partition.is_none() {
        return Err(Fail::new(exit::INVALID, "give --degree, --genus or --partition"));
    }
    let mut text = Vec::new();
    let mut result = json!({});
    let g = match (args.degree, args.genus) {
        (Some(0), _) => return Err(Fail::new(exit::INVALID, "degree must be at least 1")),
        (Some(d), Some(g)) if genus(d) != g => {
            return Err(Fail::new(exit::INVALID, format!("degree {d} has genus {}, not {g}", genus(d))));
        }
        (Some(d), _) => {
            let g = genus(d);
            let h = harnack_bound(d);
            text.push(format!("degree {d}: genus {g}, Harnack bound {h}"));
            result["degree"] = json!(d);
            result["harnack"] = json!(h);
            if g >= 2 {
                let l = g - 1;
                let gab = gabard_bound(g, l)?;
                text.push(format!("(M-2)-curves: {l} components, Gabard bound {gab}"));
                result["m2_components"] = json!(l);
                result["m2_gabard"] = json!(gab);
            }
            g
        }
        (None, Some(g)) => g,
        (None, None) => return Err(Fail::new(exit::INVALID, "--partition needs --genus or --degree")),
    };
    result["genus"] = json!(g);
    if let Some(l) = args.components {
        let gab = gabard_bound(g, l)?;
        text.push(format!("genus {g}, {l} components: Gabard bound {gab}"));
        result["components"] = json!(l);
        result["gabard"] = json!(gab);
    }
    if g >= 2 {
        let [a, b] = m2_sepgon_range(g)?;
        text.push(format!("sepgon of a separating (M-2)-curve: {a} or {b}"));
        result["m2_sepgon_range"] = json!([a, b]);
    }
    if let Some(p) = &args.partition {
        let v: Vec<usize> = p
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| Fail::new(exit::INVALID, format!("invalid partition '{p}'")))?;
        let case = parse_case(&args.case)?;
        let mut members = Vec::new();
        for cone in semigroup_cones(g, case)? {
            let m = cone.contains(&v)?;
            text.push(format!(
                "{:?} + N^{}: {}",
                cone.anchor.entries,
                cone.len(),
                if m { "member" } else { "not a member" }
            ));
            members.push(json!({ "anchor": cone.anchor.entries, "member": m }));
        }
        result["partition"] = json!(v);
        result["cones"] = Value::from(members);
    }
    Ok(Outcome::ok(text, result))
}

fn triangle_from_report(v: &Value) -> Option<TriangleOverlay> {
    let t = v.get("result")?.get("triangle")?;
    let parse = |p: &Value| -> Option<ProjPoint> {
        let cs: Vec<String> = p.as_array()?.iter().map(|c| c.as_str().map(str::to_string)).collect::<Option<_>>()?;
        parse_point(&cs.try_into().ok()?).ok()
    };
    let points: Vec<ProjPoint> = t.get("points")?.as_array()?.iter().map(parse).collect::<Option<_>>()?;
    let signs: Vec<i8> = t.get("segment_signs")?.as_array()?.iter().map(|s| s.as_i64().map(|x| x as i8)).collect::<Option<_>>()?;
    Some(TriangleOverlay {
        points: points.try_into().ok()?,
        signs: signs.try_into().ok()?,
        inner: parse(t.get("inner_point")?)?,
    })
}

fn render(ctx: &mut Ctx, args: &RenderArgs) -> Res<Outcome> {
    let (_, form) = ctx.curve(&args.curve)?;
    let topo = ctx.topology(&form)?;
    let mut warnings = Vec::new();
    let pencil: Option<Pencil> = match &args.pencil {
        None => None,
        Some(p) => match ctx.read(p).and_then(|t| parse_pencil(&t).map_err(|e| located(p, e))) {
            Ok(p) => Some(p),
            Err(f) => {
                warnings.push(format!("pencil overlay skipped: {}", f.message));
                None
            }
        },
    };
    let triangle = match &args.verdict {
        None => None,
        Some(p) => {
            let parsed = ctx.read(p).ok().and_then(|t| serde_json::from_str::<Value>(&t).ok());
            let t = parsed.as_ref().and_then(triangle_from_report);
            if t.is_none() {
                warnings.push(format!("triangle overlay skipped: no triangle in {}", p.display()));
            }
            t
        }
    };
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    let overlay = Overlay { pencil: pencil.as_ref(), members: args.members, triangle };
    let svg = render_svg(&topo, &overlay, args.window);
    let text = if ctx.global.output.is_some() {
        vec![format!("svg: {} components, {} bytes", topo.components.len(), svg.len())]
    } else {
        vec![svg.trim_end().to_string()]
    };
    let result = json!({ "components": topo.components.len(), "bytes": svg.len(), "warnings": warnings });
    Ok(Outcome { code: exit::OK, text, result, artifact: Some(svg) })
}

fn fixtures_cmd(cmd: &FixturesCommand) -> Res<Outcome> {
    match cmd {
        FixturesCommand::List => {
            let names: Vec<&str> = fixtures::names().collect();
            Ok(Outcome::ok(names.iter().map(|s| s.to_string()).collect(), json!(names)))
        }
        FixturesCommand::Show { name } => {
            let text = fixtures::text(name).ok_or_else(|| Fail::new(exit::INVALID, format!("no fixture named '{name}'")))?;
            Ok(Outcome {
                code: exit::OK,
                text: vec![text.trim_end().to_string()],
                result: serde_json::from_str(text).expect("fixture JSON"),
                artifact: Some(text.to_string()),
            })
        }
        FixturesCommand::Write { dir } => {
            fs::create_dir_all(dir).map_err(|e| Fail::new(exit::FAILURE, format!("cannot create {}: {e}", dir.display())))?;
            let mut written = Vec::new();
            for name in fixtures::names() {
                let path: PathBuf = dir.join(format!("{name}.json"));
                write_file(&path, fixtures::text(name).expect("listed"))?;
                written.push(path.display().to_string());
            }
            Ok(Outcome::ok(written.clone(), json!(written)))
        }
    }
}
