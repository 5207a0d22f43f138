//! Command-line front end. The binary is a thin wrapper over [`run`]:
//!
//! ```text
//! similitude classify <scene.json>
//! similitude fixpoint <scene.json> [--method auto|algorithm1|theorem|dilation|algebraic] [--trace]
//! similitude figure   <scene.json> --out <path> [--which construction|dilation|axis]
//! similitude fuzz     [--seed N] [--cases M] [--config <file>] [--out <path>]
//! ```
//!
//! Exit codes: 0 success; 1 fuzz run with failing cases; 2 usage, parse, or
//! configuration errors; 3 degenerate or non-similar scene input; 4 isometric
//! input where a unique fixed point is required; 5 construction failure;
//! 6 output file write failure.
//!
//! All numbers are printed in shortest round-trip form, so structured output
//! re-parses to bit-identical values.

use std::io::Write;

use serde_json::json;

use crate::construction::{
    dilation_center, fixed_point, fixed_point_by_parallels, fixed_point_from_witness,
    reflection_axis, witness_triangles, ConstructionTrace, Element, WitnessTriangles,
};
use crate::error::Error;
use crate::geom::{Point, Tolerances, Triangle, Vec2};
use crate::harness::{self, GenConfig};
use crate::scene::Scene;
use crate::similarity::{FixedPointResult, Kind, Similarity, SimilarityClass};
use crate::svg;

const USAGE: &str = "usage:
  similitude classify <scene.json>
  similitude fixpoint <scene.json> [--method auto|algorithm1|theorem|dilation|algebraic] [--trace]
  similitude figure <scene.json> --out <path> [--which construction|dilation|axis]
  similitude fuzz [--seed N] [--cases M] [--config <file>] [--out <path>]";

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse(_) | Error::InvalidConfig(_) => 2,
        Error::NotSimilar
        | Error::DegenerateTriangle
        | Error::DegenerateInput
        | Error::CoincidentPoints
        | Error::InvalidRatio => 3,
        Error::IsometryInput | Error::NoUniqueFixedPoint | Error::IdentityInput => 4,
        _ => 5,
    }
}

fn fail(err: &Error) -> i32 {
    eprintln!("error: {err}");
    exit_code(err)
}

fn read_scene(path: &str) -> Result<Scene, i32> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {path}: {e}");
        2
    })?;
    Scene::parse(&text).map_err(|e| fail(&e))
}

fn flag_value<'a>(args: &'a [String], name: &str) -> Result<Option<&'a str>, i32> {
    match args.iter().position(|a| a == name) {
        None => Ok(None),
        Some(i) => match args.get(i + 1) {
            Some(v) => Ok(Some(v.as_str())),
            None => {
                eprintln!("error: {name} needs a value");
                Err(2)
            }
        },
    }
}

fn describe_class(class: &SimilarityClass) -> String {
    match class {
        SimilarityClass::Identity => "identity".into(),
        SimilarityClass::Translation { vector } => {
            format!("translation vector=({},{})", vector.x, vector.y)
        }
        SimilarityClass::Rotation { center, angle_deg } => {
            format!("rotation center={center} angle={angle_deg}")
        }
        SimilarityClass::Reflection { axis } => format!("reflection axis={axis}"),
        SimilarityClass::GlideReflection { axis, glide } => {
            format!("glide_reflection axis={axis} glide=({},{})", glide.x, glide.y)
        }
        SimilarityClass::Stretch { center, ratio } => {
            format!("stretch center={center} ratio={ratio}")
        }
        SimilarityClass::StretchRotation { center, ratio, angle_deg } => {
            format!("stretch_rotation center={center} ratio={ratio} angle={angle_deg}")
        }
        SimilarityClass::StretchReflection { center, ratio, axis } => {
            format!("stretch_reflection center={center} ratio={ratio} axis={axis}")
        }
    }
}

fn class_json(class: &SimilarityClass) -> serde_json::Value {
    let mut value = match class {
        SimilarityClass::Identity => json!({}),
        SimilarityClass::Translation { vector } => json!({ "vector": [vector.x, vector.y] }),
        SimilarityClass::Rotation { center, angle_deg } => {
            json!({ "center": [center.x, center.y], "angle_deg": angle_deg })
        }
        SimilarityClass::Reflection { axis } => json!({ "axis": axis }),
        SimilarityClass::GlideReflection { axis, glide } => {
            json!({ "axis": axis, "glide": [glide.x, glide.y] })
        }
        SimilarityClass::Stretch { center, ratio } => {
            json!({ "center": [center.x, center.y], "ratio": ratio })
        }
        SimilarityClass::StretchRotation { center, ratio, angle_deg } => {
            json!({ "center": [center.x, center.y], "ratio": ratio, "angle_deg": angle_deg })
        }
        SimilarityClass::StretchReflection { center, ratio, axis } => {
            json!({ "center": [center.x, center.y], "ratio": ratio, "axis": axis })
        }
    };
    let obj = value.as_object_mut().expect("class params are an object");
    obj.insert("class".into(), json!(class.tag()));
    obj.insert("is_dilatation".into(), json!(class.is_dilatation()));
    value
}

fn cmd_classify(scene_path: &str, out: &mut dyn Write) -> i32 {
    let scene = match read_scene(scene_path) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let alpha = match scene.build_similarity() {
        Ok(a) => a,
        Err(e) => return fail(&e),
    };
    let class = alpha.classify(scene.tolerances());
    let _ = writeln!(out, "{}", describe_class(&class));
    let _ = writeln!(out, "{}", class_json(&class));
    0
}

/// Prefer the scene's own triangles as the witness when they qualify.
fn scene_witness(alpha: &Similarity, scene: &Scene, tol: Tolerances) -> Option<WitnessTriangles> {
    let (source, image) = scene.triangles().ok()??;
    let w = WitnessTriangles { source, image };
    (!alpha.is_isometry(tol) && !alpha.is_dilatation() && w.validate(alpha, tol).is_ok())
        .then_some(w)
}

fn construct_auto(alpha: &Similarity, scene: &Scene, tol: Tolerances) -> crate::Result<FixedPointResult> {
    if let Some(w) = scene_witness(alpha, scene, tol) {
        if let Ok(result) = fixed_point_from_witness(alpha, &w, tol) {
            return Ok(result);
        }
    }
    fixed_point(alpha, tol)
}

fn construct_with_method(
    alpha: &Similarity,
    scene: &Scene,
    method: &str,
    tol: Tolerances,
) -> Result<FixedPointResult, i32> {
    let result = match method {
        "auto" => construct_auto(alpha, scene, tol),
        "algorithm1" => {
            if alpha.is_isometry(tol) {
                Err(Error::IsometryInput)
            } else {
                match scene_witness(alpha, scene, tol) {
                    Some(w) => fixed_point_from_witness(alpha, &w, tol),
                    None => witness_triangles(alpha, tol)
                        .and_then(|w| fixed_point_from_witness(alpha, &w, tol)),
                }
            }
        }
        "theorem" => fixed_point_by_parallels(alpha, tol),
        "dilation" => dilation_center(alpha, Point::ORIGIN, tol),
        "algebraic" => alpha.fixed_point_algebraic(tol),
        other => {
            eprintln!("error: unknown method {other}");
            return Err(2);
        }
    };
    result.map_err(|e| fail(&e))
}

fn trace_json(trace: &ConstructionTrace) -> serde_json::Value {
    serde_json::to_value(trace.entries()).expect("trace serializes")
}

fn cmd_fixpoint(scene_path: &str, method: &str, show_trace: bool, out: &mut dyn Write) -> i32 {
    let scene = match read_scene(scene_path) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let alpha = match scene.build_similarity() {
        Ok(a) => a,
        Err(e) => return fail(&e),
    };
    let tol = scene.tolerances();
    let result = match construct_with_method(&alpha, &scene, method, tol) {
        Ok(r) => r,
        Err(code) => return code,
    };

    let _ = writeln!(
        out,
        "C={} method={} conditioning={}",
        result.point,
        result.method.as_str(),
        result.conditioning
    );
    if show_trace {
        if let Some(trace) = &result.trace {
            let _ = writeln!(out, "trace:");
            for entry in trace.entries() {
                let rendered = match &entry.element {
                    Element::Point(p) => format!("point {p}"),
                    Element::Line(l) => format!("line {l}"),
                };
                let _ = writeln!(out, "  step {} {} = {}", entry.step, entry.label, rendered);
            }
        }
    }
    let mut doc = json!({
        "point": [result.point.x, result.point.y],
        "method": result.method.as_str(),
        "conditioning": result.conditioning,
    });
    if show_trace {
        if let Some(trace) = &result.trace {
            doc.as_object_mut()
                .expect("object")
                .insert("trace".into(), trace_json(trace));
        }
    }
    let _ = writeln!(out, "{doc}");
    0
}

/// Picks labeled triangles plus a trace suited for the requested figure.
fn figure_trace(
    alpha: &Similarity,
    scene: &Scene,
    which: &str,
    tol: Tolerances,
) -> Result<(ConstructionTrace, Option<(Triangle, Triangle)>), i32> {
    match which {
        "construction" => {
            if alpha.is_isometry(tol) {
                return Err(fail(&Error::IsometryInput));
            }
            if alpha.is_dilatation() {
                return Err(fail(&Error::IsDilatation));
            }
            let witness = match scene_witness(alpha, scene, tol) {
                Some(w) => w,
                None => witness_triangles(alpha, tol).map_err(|e| fail(&e))?,
            };
            let result = fixed_point_from_witness(alpha, &witness, tol).map_err(|e| fail(&e))?;
            let mut trace = ConstructionTrace::new();
            let [p, q, r] = witness.source.vertices();
            let [p2, q2, r2] = witness.image.vertices();
            for (label, point) in
                [("P", p), ("Q", q), ("R", r), ("P'", p2), ("Q'", q2), ("R'", r2)]
            {
                trace.push_point(label, point, 0);
            }
            trace.extend(result.trace.as_ref().expect("witness route traces"));
            Ok((trace, Some((witness.source, witness.image))))
        }
        "dilation" => {
            let result = dilation_center(alpha, Point::ORIGIN, tol).map_err(|e| fail(&e))?;
            let trace = result.trace.expect("dilation route traces");
            Ok((trace, scene.triangles().ok().flatten()))
        }
        "axis" => {
            if alpha.kind() != Kind::Indirect {
                return Err(fail(&Error::NotIndirect));
            }
            let center = construct_auto(alpha, scene, tol).map_err(|e| fail(&e))?.point;
            let triangles = scene.triangles().ok().flatten();
            let probe = triangles
                .map(|(source, _)| source.p1)
                .filter(|p| p.distance(center) > tol.eps_point * (1.0 + center.to_vec().norm()))
                .unwrap_or(center + Vec2::new(1.0 + center.to_vec().norm(), 0.0));
            let axis = reflection_axis(alpha, center, probe, tol).map_err(|e| fail(&e))?;
            let mut trace = ConstructionTrace::new();
            trace.push_point("P", probe, 1);
            trace.push_point("P'", alpha.apply(probe), 1);
            trace.push_line("axis", axis, 2);
            trace.push_point("C", center, 3);
            Ok((trace, triangles))
        }
        other => {
            eprintln!("error: unknown figure kind {other}");
            Err(2)
        }
    }
}

fn cmd_figure(scene_path: &str, out_path: &str, which: &str, out: &mut dyn Write) -> i32 {
    let scene = match read_scene(scene_path) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let alpha = match scene.build_similarity() {
        Ok(a) => a,
        Err(e) => return fail(&e),
    };
    let (trace, triangles) = match figure_trace(&alpha, &scene, which, scene.tolerances()) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let document = svg::render(&trace, triangles.as_ref().map(|(s, i)| (s, i)));
    if let Err(e) = std::fs::write(out_path, document) {
        eprintln!("error: cannot write {out_path}: {e}");
        return 6;
    }
    let _ = writeln!(out, "wrote {out_path}");
    0
}

fn cmd_fuzz(args: &[String], out: &mut dyn Write) -> i32 {
    let mut config = GenConfig::default();
    match flag_value(args, "--config") {
        Err(code) => return code,
        Ok(Some(path)) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {path}: {e}");
                    return 2;
                }
            };
            config = match serde_json::from_str(&text) {
                Ok(c) => c,
                Err(e) => return fail(&Error::Parse(e.to_string())),
            };
        }
        Ok(None) => {}
    }
    match flag_value(args, "--seed") {
        Err(code) => return code,
        Ok(Some(v)) => match v.parse() {
            Ok(seed) => config.seed = seed,
            Err(_) => return fail(&Error::Parse(format!("invalid seed {v}"))),
        },
        Ok(None) => {}
    }
    match flag_value(args, "--cases") {
        Err(code) => return code,
        Ok(Some(v)) => match v.parse() {
            Ok(cases) => config.cases = cases,
            Err(_) => return fail(&Error::Parse(format!("invalid case count {v}"))),
        },
        Ok(None) => {}
    }
    if let Err(e) = config.validate() {
        return fail(&e);
    }
    let report_path = match flag_value(args, "--out") {
        Err(code) => return code,
        Ok(v) => v.unwrap_or("fuzz_report.json").to_string(),
    };

    let equivalence = harness::run_equivalence(&config);
    let invariants = harness::run_invariants(&config);
    let _ = writeln!(
        out,
        "equivalence: total={} passed={} failed={} max_rel_error={:e}",
        equivalence.total, equivalence.passed, equivalence.failed, equivalence.max_rel_error
    );
    let _ = writeln!(
        out,
        "invariants: total={} passed={} failed={}",
        invariants.total, invariants.passed, invariants.failed
    );

    let document = serde_json::to_string_pretty(&json!({
        "config": config,
        "equivalence": equivalence,
        "invariants": invariants,
    }))
    .expect("report serializes");
    if let Err(e) = std::fs::write(&report_path, document) {
        eprintln!("error: cannot write {report_path}: {e}");
        return 6;
    }
    let _ = writeln!(out, "report written to {report_path}");
    if equivalence.failed + invariants.failed > 0 {
        1
    } else {
        0
    }
}

/// Dispatches a full command line (without the program name) and returns the
/// process exit code.
pub fn run(args: &[String], out: &mut dyn Write) -> i32 {
    let Some(command) = args.first() else {
        eprintln!("{USAGE}");
        return 2;
    };
    let rest = &args[1..];
    match command.as_str() {
        "classify" => match rest.first() {
            Some(path) => cmd_classify(path, out),
            None => {
                eprintln!("{USAGE}");
                2
            }
        },
        "fixpoint" => {
            let Some(path) = rest.first() else {
                eprintln!("{USAGE}");
                return 2;
            };
            let method = match flag_value(rest, "--method") {
                Ok(m) => m.unwrap_or("auto").to_string(),
                Err(code) => return code,
            };
            let show_trace = rest.iter().any(|a| a == "--trace");
            cmd_fixpoint(path, &method, show_trace, out)
        }
        "figure" => {
            let Some(path) = rest.first() else {
                eprintln!("{USAGE}");
                return 2;
            };
            let out_path = match flag_value(rest, "--out") {
                Ok(Some(p)) => p.to_string(),
                Ok(None) => {
                    eprintln!("error: figure needs --out <path>");
                    return 2;
                }
                Err(code) => return code,
            };
            let which = match flag_value(rest, "--which") {
                Ok(w) => w.unwrap_or("construction").to_string(),
                Err(code) => return code,
            };
            cmd_figure(path, &out_path, &which, out)
        }
        "fuzz" => cmd_fuzz(rest, out),
        "help" | "-h" | "--help" => {
            let _ = writeln!(out, "{USAGE}");
            0
        }
        other => {
            eprintln!("error: unknown command {other}\n{USAGE}");
            2
        }
    }
}
