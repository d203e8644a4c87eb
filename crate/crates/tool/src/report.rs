//! Human-readable and structured renderings of a [`Verdict`].
//!
//! Both renderings depend only on the verdict and the surface, never on
//! timing or worker count, so equal inputs give byte-identical output.
//!
//! Structured format: one `key value` pair per line. A header block is
//! followed by one block per distinct dual graph, opened by `graph <key>`
//! and closed by `end`.
//!
//! ```text
//! verdict NOT_EMBEDDABLE
//! surface_connected true
//! assume_connected_duals false
//! single_forest false
//! branches l
//! assignments 1
//! distinct_graphs 1
//! graph e-,e+
//! vertices 1
//! edge e 0 0
//! multiplicity 1
//! representative_index 0
//! representative l 0 1
//! m 1
//! n 1
//! outcome condition2
//! witness_forest
//! gcd 2
//! row e 2
//! end
//! ```
//!
//! `representative <branch> <prong>…` lists the cyclic prong order of the
//! least-index assignment producing the graph, prongs numbered as in
//! declaration order. Outcome-specific keys:
//!
//! * `condition1`: none (`m > n`).
//! * `condition2`: `witness_forest` (sector ids of forest edges), `gcd`, and
//!   one `row <sector> <entries>` per row of the degree matrix.
//! * `no_obstruction`: `forests_checked`, `forest`, the `row` lines, and one
//!   `certificate <entries>` line per row of a right inverse `B`
//!   (`A·B = I`).
//! * `skipped`: none.

use std::fmt::Write as _;

use mbs_core::{Decision, DegreeMatrix, GraphReport, IntMatrix, MultibranchedSurface, Outcome, SpanningForest, Verdict};

fn forest_ids(x: &MultibranchedSurface, f: &SpanningForest) -> String {
    f.edges.iter().map(|&s| x.sectors()[s].id.as_str()).collect::<Vec<_>>().join(" ")
}

fn entries<T: std::fmt::Display>(row: &[T]) -> String {
    row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn kv(out: &mut String, key: &str, value: impl std::fmt::Display) {
    let value = value.to_string();
    if value.is_empty() {
        let _ = writeln!(out, "{key}");
    } else {
        let _ = writeln!(out, "{key} {value}");
    }
}

fn structured_matrix(out: &mut String, x: &MultibranchedSurface, a: &DegreeMatrix) {
    for (i, &s) in a.sectors.iter().enumerate() {
        kv(out, "row", format!("{} {}", x.sectors()[s].id, entries(a.matrix.row(i))).trim_end());
    }
}

fn structured_graph(out: &mut String, x: &MultibranchedSurface, r: &GraphReport) {
    kv(out, "graph", r.graph.key_string(x));
    kv(out, "vertices", r.graph.vertex_count());
    for (s, (u, v)) in r.graph.edges().iter().enumerate() {
        kv(out, "edge", format!("{} {u} {v}", x.sectors()[s].id));
    }
    kv(out, "multiplicity", r.multiplicity);
    kv(out, "representative_index", r.representative_index);
    for (b, order) in r.representative.orders.iter().enumerate() {
        let prongs = order.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ");
        kv(out, "representative", format!("{} {prongs}", x.branches()[b].id).trim_end());
    }
    kv(out, "m", r.m);
    kv(out, "n", r.n);
    match &r.outcome {
        Outcome::Condition1 => kv(out, "outcome", "condition1"),
        Outcome::Condition2 { forest, gcd, matrix } => {
            kv(out, "outcome", "condition2");
            kv(out, "witness_forest", forest_ids(x, forest));
            kv(out, "gcd", gcd);
            structured_matrix(out, x, matrix);
        }
        Outcome::NoObstruction {
            forests_checked,
            forest,
            matrix,
            certificate,
        } => {
            kv(out, "outcome", "no_obstruction");
            kv(out, "forests_checked", forests_checked);
            kv(out, "forest", forest_ids(x, forest));
            structured_matrix(out, x, matrix);
            for i in 0..certificate.rows() {
                kv(out, "certificate", entries(certificate.row(i)));
            }
        }
        Outcome::Skipped => kv(out, "outcome", "skipped"),
    }
    kv(out, "end", "");
}

pub fn structured(x: &MultibranchedSurface, v: &Verdict) -> String {
    let mut out = String::new();
    kv(&mut out, "verdict", v.decision.as_str());
    kv(&mut out, "surface_connected", v.surface_connected);
    kv(&mut out, "assume_connected_duals", v.options.assume_connected_duals);
    kv(&mut out, "single_forest", v.options.single_forest);
    let branches = x.branches().iter().map(|b| b.id.as_str()).collect::<Vec<_>>().join(" ");
    kv(&mut out, "branches", branches);
    kv(&mut out, "assignments", v.assignments);
    kv(&mut out, "distinct_graphs", v.distinct_graphs());
    for r in &v.reports {
        structured_graph(&mut out, x, r);
    }
    out
}

fn text_matrix(out: &mut String, label: &str, rows: &[(String, String)]) {
    let _ = writeln!(out, "  {label}:");
    if rows.is_empty() {
        let _ = writeln!(out, "    (no rows)");
    }
    let width = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
    for (l, r) in rows {
        let _ = writeln!(out, "    {l:width$} [{r}]");
    }
}

fn matrix_rows(x: &MultibranchedSurface, a: &DegreeMatrix) -> Vec<(String, String)> {
    a.sectors
        .iter()
        .enumerate()
        .map(|(i, &s)| (x.sectors()[s].id.clone(), entries(a.matrix.row(i))))
        .collect()
}

fn certificate_rows(b: &IntMatrix) -> Vec<(String, String)> {
    (0..b.rows()).map(|i| (String::new(), entries(b.row(i)))).collect()
}

fn forest_text(x: &MultibranchedSurface, f: &SpanningForest) -> String {
    format!("{{{}}}", forest_ids(x, f).replace(' ', ", "))
}

pub fn text(x: &MultibranchedSurface, v: &Verdict) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "verdict: {}", v.decision.as_str());
    match v.decision {
        Decision::NotEmbeddable => {
            let _ = writeln!(
                out,
                "  every abstract dual graph is obstructed: the surface embeds neither in S^3 nor in any homology 3-sphere"
            );
        }
        Decision::Inconclusive if !v.surface_connected => {
            let _ = writeln!(out, "  the surface is disconnected; no obstruction is claimed");
        }
        Decision::Inconclusive => {
            let _ = writeln!(
                out,
                "  some candidate dual graph is unobstructed; embeddability in S^3 is not decided"
            );
        }
    }
    let _ = writeln!(out, "cyclic assignments: {}", v.assignments);
    let _ = writeln!(out, "distinct dual graphs: {}", v.distinct_graphs());
    if v.options.assume_connected_duals {
        let _ = writeln!(out, "disconnected dual graphs skipped");
    }
    if v.options.single_forest {
        let _ = writeln!(out, "fast mode: one spanning forest per graph");
    }
    for (i, r) in v.reports.iter().enumerate() {
        let g = &r.graph;
        let _ = writeln!(out);
        let _ = writeln!(out, "graph {}: {}", i + 1, g.key_string(x));
        let _ = writeln!(
            out,
            "  vertices {}, edges {}, components {}, assignments {}",
            g.vertex_count(),
            g.edge_count(),
            g.components(),
            r.multiplicity
        );
        let _ = writeln!(out, "  m = {} (first Betti number), n = {} (branches)", r.m, r.n);
        match &r.outcome {
            Outcome::Condition1 => {
                let _ = writeln!(out, "  obstructed: m > n");
            }
            Outcome::Condition2 { forest, gcd, matrix } => {
                let _ = writeln!(
                    out,
                    "  obstructed: spanning forest {} gives A_T with maximal-minor gcd {gcd}",
                    forest_text(x, forest)
                );
                text_matrix(&mut out, "A_T", &matrix_rows(x, matrix));
            }
            Outcome::NoObstruction {
                forests_checked,
                forest,
                matrix,
                certificate,
            } => {
                let _ = writeln!(
                    out,
                    "  unobstructed: all {forests_checked} spanning forests checked give maximal-minor gcd 1"
                );
                let _ = writeln!(out, "  forest {}:", forest_text(x, forest));
                text_matrix(&mut out, "A_T", &matrix_rows(x, matrix));
                text_matrix(&mut out, "B with A_T B = I", &certificate_rows(certificate));
            }
            Outcome::Skipped => {
                let _ = writeln!(out, "  skipped: disconnected");
            }
        }
    }
    out
}
