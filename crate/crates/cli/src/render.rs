//! Report construction shared by the text and JSON output paths.

use latquad_core::bound::{FullIdealReport, QuadrangleReport};
use latquad_core::fibers::FiberSurvey;
use latquad_core::hilbert::DegreeProfile;
use latquad_core::lattice::HypothesisCertificate;
use latquad_core::BoundReport;
use num::bigint::BigInt;
use num::ToPrimitive;
use serde_json::{json, Value};
use std::fmt::Write as _;

/// Big integers render as JSON numbers when they fit, decimal strings otherwise.
pub fn big(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn big_list(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(big).collect())
}

pub fn opt_big(x: &Option<BigInt>) -> Value {
    match x {
        Some(v) => big(v),
        None => Value::Null,
    }
}

pub fn certificate_json(cert: &HypothesisCertificate) -> Value {
    json!({
        "n": cert.n,
        "rank": cert.rank,
        "grading": cert.grading,
        "grading_supplied": cert.grading_supplied,
        "spot_check_bound": cert.spot_check_bound,
    })
}

pub fn certificate_text(out: &mut String, cert: &HypothesisCertificate) {
    let _ = writeln!(
        out,
        "hypotheses: rank {} lattice in {} variables",
        cert.rank, cert.n
    );
    let source = if cert.grading_supplied {
        "supplied"
    } else {
        "derived"
    };
    let _ = writeln!(out, "positive grading ({source}): {:?}", cert.grading);
}

pub fn survey_json(survey: &FiberSurvey) -> Value {
    json!({
        "max_degree": survey.max_degree,
        "generators": survey.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "segment_count": survey.segment_count,
        "triangle_count": survey.triangle_count,
        "quadrangle_count": survey.quadrangles.len(),
        "quadrangle_representatives": survey
            .quadrangles
            .iter()
            .map(|q| q.representative.to_string())
            .collect::<Vec<_>>(),
        "non_syzygy_quadrangles": survey.non_syzygy_quadrangles,
        "fibers_scanned": survey.fibers_scanned,
        "class_counts": big_list(&survey.class_counts),
        "anomalies": survey
            .anomalies
            .iter()
            .map(|a| json!({ "representative": a.representative.to_string(), "detail": a.detail }))
            .collect::<Vec<_>>(),
        "warnings": survey.warnings,
    })
}

pub fn survey_text(out: &mut String, survey: &FiberSurvey) {
    let _ = writeln!(
        out,
        "fiber survey through weighted degree {}",
        survey.max_degree
    );
    let _ = writeln!(
        out,
        "  {} fiber classes, {} generator segments, {} syzygy triangles, {} syzygy quadrangles",
        survey.fibers_scanned,
        survey.segment_count,
        survey.triangle_count,
        survey.quadrangles.len()
    );
    let _ = writeln!(out, "  minimal generators ({}):", survey.generators.len());
    for g in &survey.generators {
        let _ = writeln!(out, "    {g}");
    }
    for q in &survey.quadrangles {
        let _ = writeln!(
            out,
            "  quadrangle at class {} (degree {}, {} monomials)",
            q.representative,
            q.degree,
            q.monomials.len()
        );
    }
    if survey.non_syzygy_quadrangles > 0 {
        let _ = writeln!(
            out,
            "  {} primitive quadrangle hulls failed the syzygy certificate",
            survey.non_syzygy_quadrangles
        );
    }
    for a in &survey.anomalies {
        let _ = writeln!(out, "  anomaly at class {}: {}", a.representative, a.detail);
    }
    for w in &survey.warnings {
        let _ = writeln!(out, "  note: {w}");
    }
}

pub fn profile_json(profile: &DegreeProfile) -> Value {
    let names = ["u_plus", "u_minus", "v_plus", "v_minus", "p", "r", "s", "t"];
    let values = profile.values();
    let map: serde_json::Map<String, Value> = names
        .iter()
        .zip(values.iter())
        .map(|(k, v)| (k.to_string(), big(v)))
        .collect();
    json!({
        "block_degrees": Value::Object(map),
        "step1_shifts": big_list(&profile.step1_shifts()),
        "step2_shifts": big_list(&profile.step2_shifts()),
        "step3_shift": big(&profile.step3_shift()),
    })
}

pub fn profile_text(out: &mut String, profile: &DegreeProfile) {
    let names = ["u+", "u-", "v+", "v-", "p", "r", "s", "t"];
    let values = profile.values();
    let pairs: Vec<String> = names
        .iter()
        .zip(values.iter())
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    let _ = writeln!(out, "  block degrees: {}", pairs.join(" "));
    let _ = writeln!(
        out,
        "  shifts: step 1 {:?}, step 2 {:?}, step 3 {}",
        profile.step1_shifts().map(|x| x.to_string()),
        profile.step2_shifts().map(|x| x.to_string()),
        profile.step3_shift()
    );
}

pub fn quadrangle_report_json(report: &QuadrangleReport) -> Value {
    json!({
        "representative": report.representative.to_string(),
        "class_degree": big(&report.class_degree),
        "profile": profile_json(&report.profile),
        "resolution_degree": big(&report.resolution_degree),
        "formula_degree": big(&report.formula_degree),
        "m1": big(&report.m1),
        "m2": big(&report.m2),
        "gap": big(&report.gap),
        "holds": report.holds,
        "minimal": report.minimal,
    })
}

pub fn quadrangle_report_text(out: &mut String, report: &QuadrangleReport) {
    let _ = writeln!(out, "quadrangle at class {}", report.representative);
    profile_text(out, &report.profile);
    let _ = writeln!(
        out,
        "  degree {} (numerator route {}), M1 = {}, M2 = {}",
        report.formula_degree, report.resolution_degree, report.m1, report.m2
    );
    let verdict = if report.holds { "holds" } else { "VIOLATED" };
    let _ = writeln!(out, "  bound 2 deg <= M1*M2 {verdict} (gap {})", report.gap);
    if !report.minimal {
        let _ = writeln!(
            out,
            "  resolution is not minimal (some comparison map has a unit)"
        );
    }
}

pub fn full_report_json(report: &FullIdealReport) -> Value {
    json!({
        "survey": survey_json(&report.survey),
        "quadrangles": report.quadrangles.iter().map(quadrangle_report_json).collect::<Vec<_>>(),
        "assembled_shifts": {
            "step1": big_list(&report.shifts.step1),
            "step2": big_list(&report.shifts.step2),
            "step3": big_list(&report.shifts.step3),
        },
        "m1": big(&report.m1),
        "m2": big(&report.m2),
        "generators_from_single_quadrangle": report.j_equals_full,
        "ideal_degree": opt_big(&report.ideal_degree),
        "gap": opt_big(&report.gap),
        "holds": report.holds,
        "warnings": report.warnings,
    })
}

pub fn full_report_text(out: &mut String, report: &FullIdealReport) {
    survey_text(out, &report.survey);
    for q in &report.quadrangles {
        quadrangle_report_text(out, q);
    }
    let _ = writeln!(
        out,
        "assembled shifts: M1 = {} (largest step-1), M2 = {} (largest step-2)",
        report.m1, report.m2
    );
    if report.j_equals_full {
        let _ = writeln!(
            out,
            "the single quadrangle's four binomials generate the whole ideal (through the surveyed range)"
        );
    }
    match &report.ideal_degree {
        Some(d) => {
            let _ = writeln!(out, "ideal degree by fiber counting: {d}");
        }
        None => {
            let _ = writeln!(out, "ideal degree by fiber counting: unavailable");
        }
    }
    match &report.gap {
        Some(g) => {
            let verdict = if report.holds { "holds" } else { "VIOLATED" };
            let _ = writeln!(out, "bound 2 deg <= M1*M2 {verdict} (gap {g})");
        }
        None => {
            let verdict = if report.holds { "hold" } else { "are VIOLATED" };
            let _ = writeln!(
                out,
                "per-quadrangle bounds {verdict}; global gap unavailable"
            );
        }
    }
    for w in &report.warnings {
        let _ = writeln!(out, "note: {w}");
    }
}

pub fn bound_report_json(report: &BoundReport) -> Value {
    json!({
        "profile": profile_json(&report.profile),
        "degree": big(&report.degree),
        "m1": big(&report.m1),
        "m2": big(&report.m2),
        "m1_min": big(&report.m1_min),
        "m2_min": big(&report.m2_min),
        "gap": big(&report.gap),
        "holds": report.holds,
        "m1_attained": report.m1_attained.iter().map(|c| c.shift_name()).collect::<Vec<_>>(),
        "m2_attained": report.m2_attained.iter().map(|c| c.shift_name()).collect::<Vec<_>>(),
    })
}

pub fn bound_report_text(out: &mut String, report: &BoundReport) {
    profile_text(out, &report.profile);
    let _ = writeln!(
        out,
        "  degree {}, M1 = {} (from {}), M2 = {} (from {})",
        report.degree,
        report.m1,
        report
            .m1_attained
            .iter()
            .map(|c| c.shift_name())
            .collect::<Vec<_>>()
            .join(" = "),
        report.m2,
        report
            .m2_attained
            .iter()
            .map(|c| c.shift_name())
            .collect::<Vec<_>>()
            .join(" = "),
    );
    let verdict = if report.holds { "holds" } else { "VIOLATED" };
    let _ = writeln!(out, "  bound 2 deg <= M1*M2 {verdict} (gap {})", report.gap);
}

/// One CSV row per profile: free block degrees, then degree, shifts, and gap.
pub const CSV_HEADER: &str = "u_plus,u_minus,v_plus,v_minus,p,r,s,t,degree,m1,m2,gap,holds";

pub fn bound_report_csv(report: &BoundReport) -> String {
    let values = report.profile.values();
    let mut fields: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    fields.push(report.degree.to_string());
    fields.push(report.m1.to_string());
    fields.push(report.m2.to_string());
    fields.push(report.gap.to_string());
    fields.push(report.holds.to_string());
    fields.join(",")
}
