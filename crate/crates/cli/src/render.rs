use std::fmt::Write as _;

use serde::Serialize;
use spheract_core::character::{EmbeddingReport, GroupAnalysis, RealIrrepUnit, SearchStats, TableExport};
use spheract_core::simplicial::{HomologyProfile, SimplicialComplex};
use spheract_core::verify::ObstructionCertificate;

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("outputs serialize");
    s.push('\n');
    s
}

pub fn table_markdown(t: &TableExport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# Character table of {}\n", t.group);
    let _ = writeln!(out, "Order {}, {} classes, values in Q(zeta_{}).\n", t.order, t.classes.len(), t.value_order);
    out.push_str("| | ind |");
    for c in &t.classes {
        let _ = write!(out, " {} |", c.representative);
    }
    out.push_str("\n|---|---|");
    out.push_str(&"---|".repeat(t.classes.len()));
    out.push_str("\n| size | |");
    for c in &t.classes {
        let _ = write!(out, " {} |", c.size);
    }
    out.push('\n');
    for (i, r) in t.rows.iter().enumerate() {
        let _ = write!(out, "| X{} | {} |", i + 1, r.indicator);
        for v in &r.values {
            let _ = write!(out, " {} |", v.text);
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
pub struct MinDegreeOutput {
    group: String,
    order: u64,
    class_count: usize,
    units: Vec<RealIrrepUnit>,
    min_faithful_real_degree: u64,
    witness: Vec<RealIrrepUnit>,
    stats: SearchStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<ObstructionCertificate>,
}

impl MinDegreeOutput {
    pub fn new(a: &GroupAnalysis, embedding: Option<&EmbeddingReport>) -> Self {
        MinDegreeOutput {
            group: a.table.spec.to_string(),
            order: a.table.group_order(),
            class_count: a.table.class_count(),
            units: a.units.clone(),
            min_faithful_real_degree: a.min_degree.degree,
            witness: a.min_degree.witness.clone(),
            stats: a.min_degree.stats.clone(),
            certificate: embedding.map(ObstructionCertificate::from_report),
        }
    }

    pub fn markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# Minimal faithful real degree of {}\n", self.group);
        let _ = writeln!(out, "Order {}, {} classes, {} real units.\n", self.order, self.class_count, self.units.len());
        let _ = writeln!(out, "Minimal degree: **{}**\n", self.min_faithful_real_degree);
        out.push_str("| Witness rows | Indicator | Real degree |\n|---|---|---|\n");
        for u in &self.witness {
            let _ = writeln!(out, "| {:?} | {} | {} |", u.rows, u.indicator, u.real_degree);
        }
        let _ = writeln!(
            out,
            "\nSearch: {} candidate units, {} nodes, {} pruned, exhausted: {}.",
            self.stats.candidate_units, self.stats.nodes, self.stats.pruned, self.stats.exhausted
        );
        if let Some(c) = &self.certificate {
            let _ = writeln!(
                out,
                "\nAgainst O({}): {}.",
                c.m,
                if c.obstructed { "obstructed" } else { "embeds" }
            );
        }
        out
    }
}

#[derive(Serialize)]
pub struct ComplexOutput {
    complex: String,
    vertex_count: usize,
    dimension: i64,
    homology: HomologyProfile,
    #[serde(skip_serializing_if = "Option::is_none")]
    facets: Option<Vec<Vec<String>>>,
}

impl ComplexOutput {
    pub fn new(complex: String, k: &SimplicialComplex, homology: HomologyProfile, with_facets: bool) -> Self {
        let facets = with_facets.then(|| {
            k.facet_labels()
                .iter()
                .map(|f| f.iter().map(ToString::to_string).collect())
                .collect()
        });
        ComplexOutput {
            complex,
            vertex_count: k.vertex_count(),
            dimension: k.dimension(),
            homology,
            facets,
        }
    }

    pub fn markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# Homology of {}\n", self.complex);
        let _ = writeln!(
            out,
            "{} vertices, dimension {}, f-vector {:?}, Euler characteristic {}.\n",
            self.vertex_count, self.dimension, self.homology.f_vector, self.homology.euler_characteristic
        );
        out.push_str("| Degree | Reduced homology |\n|---|---|\n");
        for (d, h) in &self.homology.reduced {
            let mut parts = Vec::new();
            if h.betti > 0 {
                parts.push(if h.betti == 1 { "Z".to_string() } else { format!("Z^{}", h.betti) });
            }
            parts.extend(h.torsion.iter().map(|t| format!("Z/{t}")));
            let text = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
            let _ = writeln!(out, "| {d} | {text} |");
        }
        if let Some(f) = &self.facets {
            out.push_str("\nFacets:\n\n```\n");
            for facet in f {
                let _ = writeln!(out, "{}", facet.join(" "));
            }
            out.push_str("```\n");
        }
        out
    }
}
