//! Stable text formats: JSON documents, DOT graphs and CSV tables.
//!
//! Arc encoding is `mu`, `P(i,j)`, `C(a,b)` with 1-based indices;
//! surfaces are `polygon:m`, `cylinder:n`, `mobius:n`. Every document is
//! newline-terminated and byte-stable across runs.

use serde::{Deserialize, Serialize};

use crate::complex::{Complex, Facet};
use crate::error::{Error, Result};
use crate::shelling::ShellingOrder;
use crate::surface::{QuasiArc, Surface};

/// Census export.
#[derive(Debug, Serialize, Deserialize)]
pub struct CensusDoc {
    pub surface: String,
    pub count: usize,
    pub arcs: Vec<String>,
}

pub fn census_doc(surface: &Surface) -> CensusDoc {
    let set = surface.census();
    CensusDoc {
        surface: surface.to_string(),
        count: set.len(),
        arcs: set.arcs.iter().map(|a| a.to_string()).collect(),
    }
}

/// Complex export: ground arcs and facets, stable order.
#[derive(Debug, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub surface: String,
    pub ground: Vec<String>,
    pub facets: Vec<Vec<String>>,
}

pub fn complex_doc(complex: &Complex) -> ComplexDoc {
    ComplexDoc {
        surface: complex.surface().to_string(),
        ground: complex.ground().iter().map(|a| a.to_string()).collect(),
        facets: complex
            .facets()
            .iter()
            .map(|f| f.arcs().iter().map(|a| a.to_string()).collect())
            .collect(),
    }
}

/// Shelling order export.
#[derive(Debug, Serialize, Deserialize)]
pub struct ShellingDoc {
    pub surface: String,
    pub order: Vec<Vec<String>>,
    pub provenance: Vec<String>,
}

pub fn shelling_doc(order: &ShellingOrder) -> ShellingDoc {
    ShellingDoc {
        surface: order.surface.to_string(),
        order: order
            .facets()
            .iter()
            .map(|f| f.arcs().iter().map(|a| a.to_string()).collect())
            .collect(),
        provenance: order.provenance().to_vec(),
    }
}

pub fn shelling_from_doc(doc: &ShellingDoc) -> Result<ShellingOrder> {
    let surface: Surface = doc.surface.parse()?;
    let mut facets = Vec::with_capacity(doc.order.len());
    for f in &doc.order {
        let arcs: Result<Vec<QuasiArc>> = f.iter().map(|s| s.parse()).collect();
        facets.push(Facet::new(arcs?));
    }
    let provenance = if doc.provenance.len() == facets.len() {
        doc.provenance.clone()
    } else if doc.provenance.is_empty() {
        vec![String::new(); facets.len()]
    } else {
        return Err(Error::Parse(
            "provenance length does not match the order".into(),
        ));
    };
    Ok(ShellingOrder::new(surface, facets, provenance))
}

/// Parse a comma-separated arc list, ignoring commas inside parentheses.
pub fn parse_arc_list(s: &str) -> Result<Vec<QuasiArc>> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            ',' if depth == 0 => {
                if !cur.trim().is_empty() {
                    out.push(cur.trim().parse()?);
                }
                cur.clear();
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().parse()?);
    }
    Ok(out)
}

/// A reproducible run record, emitted to stderr on every CLI run.
#[derive(Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub surface: Option<String>,
    pub arc_count: Option<usize>,
    pub facet_count: Option<usize>,
    pub edge_count: Option<usize>,
    pub verdicts: Option<String>,
    pub wall_time_ms: u128,
    pub version: String,
}

/// CSV of Dyck pairs: facet arcs space-joined, the half tag and the word.
pub fn dyck_csv(n: usize, rows: &[(Facet, crate::construct::Half, crate::dyck::DyckPath)]) -> String {
    let mut s = String::from("facet,half,path\n");
    for (f, h, p) in rows {
        let arcs: Vec<String> = f.arcs().iter().map(|a| a.to_string()).collect();
        s.push_str(&format!("{},{h},{p}\n", arcs.join(" ")));
    }
    let _ = n;
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shelling_doc_round_trip() {
        let order = crate::construct::shell_mobius(2).unwrap();
        let doc = shelling_doc(&order);
        let json = serde_json::to_string(&doc).unwrap();
        let back: ShellingDoc = serde_json::from_str(&json).unwrap();
        let restored = shelling_from_doc(&back).unwrap();
        assert_eq!(restored.facets(), order.facets());
    }

    #[test]
    fn arc_list_parsing_handles_nested_commas() {
        let arcs = parse_arc_list("C(1,1),P(2,3), mu").unwrap();
        assert_eq!(
            arcs,
            vec![
                QuasiArc::Cross(1, 1),
                QuasiArc::Plain(2, 3),
                QuasiArc::OneSided
            ]
        );
    }
}
