//! The unique flip (quasi-mutation) and the flip graph.
//!
//! Removing one arc from a quasi-triangulation leaves a ridge contained in
//! exactly one other facet; the flip finds its completing arc by a linear
//! scan over the census filtered by compatibility. No geometric reasoning
//! is involved, so flips stay correct independently of the constructions
//! they support.

use std::collections::HashMap;

use crate::complex::{validate_facet, Complex, Facet};
use crate::error::{Error, Result};
use crate::surface::{bits, Census, QuasiArc, Surface};

/// Flip `arc` inside `facet`: returns the new facet and the new arc.
/// The completion is required to be unique; anything else signals a
/// model bug.
pub fn flip(surface: Surface, facet: &Facet, arc: &QuasiArc) -> Result<(Facet, QuasiArc)> {
    let census = Census::new(surface)?;
    let mask = census.mask_of(facet.arcs())?;
    validate_facet(&census, mask)?;
    let idx = census.index_of(arc)?;
    if mask & (1u128 << idx) == 0 {
        return Err(Error::ArcNotInFacet(arc.to_string()));
    }
    let (new_mask, new_idx) = flip_mask(&census, mask, idx)?;
    Ok((Facet::new(census.arcs_of(new_mask)), census.arcs()[new_idx]))
}

/// Mask-level flip against a prepared census.
pub(crate) fn flip_mask(census: &Census, facet: u128, arc: usize) -> Result<(u128, usize)> {
    let rest = facet & !(1u128 << arc);
    let mut cand = if census.len() == 128 {
        u128::MAX
    } else {
        (1u128 << census.len()) - 1
    };
    for i in bits(rest) {
        cand &= census.row(i);
    }
    cand &= !facet;
    let found = cand.count_ones() as usize;
    if found != 1 {
        return Err(Error::FlipCompletion { found });
    }
    let new_idx = cand.trailing_zeros() as usize;
    Ok((rest | cand, new_idx))
}

/// The plain arcs of a triangulation whose flip is a crossing arc.
pub fn b_arcs(surface: Surface, facet: &Facet) -> Result<Vec<QuasiArc>> {
    if facet.arcs().iter().any(|a| a.is_one_sided()) {
        return Err(Error::NotATriangulation(
            "facet contains the one-sided curve".into(),
        ));
    }
    let census = Census::new(surface)?;
    let mask = census.mask_of(facet.arcs())?;
    validate_facet(&census, mask)?;
    let mut out = Vec::new();
    for arc in facet.arcs() {
        if !arc.is_plain() {
            continue;
        }
        let idx = census.index_of(arc)?;
        let (_, new_idx) = flip_mask(&census, mask, idx)?;
        if census.arcs()[new_idx].is_cross() {
            out.push(*arc);
        }
    }
    Ok(out)
}

/// The flip graph: facets as vertices, flips as edges.
#[derive(Debug, Clone)]
pub struct FlipGraph {
    surface: Surface,
    facets: Vec<Facet>,
    /// Sorted neighbour lists, indices into `facets`.
    adjacency: Vec<Vec<usize>>,
}

impl FlipGraph {
    /// Build the flip graph over all facets of the surface.
    pub fn build(surface: Surface) -> Result<Self> {
        let complex = Complex::build(surface)?;
        Self::from_complex(&complex)
    }

    pub fn from_complex(complex: &Complex) -> Result<Self> {
        let census = complex.census();
        let masks = complex.facet_masks();
        let pos: HashMap<u128, usize> =
            masks.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut adjacency = vec![Vec::new(); masks.len()];
        for (i, &m) in masks.iter().enumerate() {
            for a in bits(m) {
                let (g, _) = flip_mask(census, m, a)?;
                let j = *pos.get(&g).ok_or_else(|| {
                    Error::WrongFamily("flip left the facet set".into())
                })?;
                adjacency[i].push(j);
            }
            adjacency[i].sort_unstable();
            adjacency[i].dedup();
        }
        Ok(FlipGraph {
            surface: *complex.surface(),
            facets: complex.facets(),
            adjacency,
        })
    }

    pub fn surface(&self) -> &Surface {
        &self.surface
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn vertex_count(&self) -> usize {
        self.facets.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn is_connected(&self) -> bool {
        if self.facets.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.facets.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.facets.len()
    }

    pub fn is_regular_of_degree(&self, d: usize) -> bool {
        self.adjacency.iter().all(|a| a.len() == d)
    }

    /// DOT export with deterministic vertex numbering and facet labels.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph flips {\n");
        for (i, f) in self.facets.iter().enumerate() {
            s.push_str(&format!("  v{} [label=\"{}\"];\n", i, f));
        }
        for (i, nbrs) in self.adjacency.iter().enumerate() {
            for &j in nbrs {
                if i < j {
                    s.push_str(&format!("  v{} -- v{};\n", i, j));
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Is the flip graph of the surface connected?
pub fn is_flip_connected(surface: Surface) -> Result<bool> {
    Ok(FlipGraph::build(surface)?.is_connected())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn facet(arcs: &[&str]) -> Facet {
        Facet::new(arcs.iter().map(|s| s.parse().unwrap()).collect())
    }

    #[test]
    fn square_flip() {
        let s: Surface = "polygon:4".parse().unwrap();
        let (f, a) = flip(s, &facet(&["P(1,3)"]), &"P(1,3)".parse().unwrap()).unwrap();
        assert_eq!(a, QuasiArc::Plain(2, 4));
        assert_eq!(f, facet(&["P(2,4)"]));
        // Involution.
        let (g, b) = flip(s, &f, &a).unwrap();
        assert_eq!(g, facet(&["P(1,3)"]));
        assert_eq!(b, QuasiArc::Plain(1, 3));
    }

    #[test]
    fn one_sided_curve_flips_to_the_crosscap_loop() {
        let s: Surface = "mobius:2".parse().unwrap();
        let (f, a) = flip(s, &facet(&["mu", "P(1,1)"]), &QuasiArc::OneSided).unwrap();
        assert_eq!(a, QuasiArc::Cross(1, 1));
        assert_eq!(f, facet(&["P(1,1)", "C(1,1)"]));
    }

    #[test]
    fn flips_are_unique_and_involutive_on_small_surfaces() {
        for s in ["polygon:6", "cylinder:4", "mobius:4"] {
            let surface: Surface = s.parse().unwrap();
            let complex = Complex::build(surface).unwrap();
            let census = complex.census();
            for &m in complex.facet_masks() {
                for i in bits(m) {
                    let (g, j) = flip_mask(census, m, i).unwrap();
                    let (back, k) = flip_mask(census, g, j).unwrap();
                    assert_eq!(back, m, "{s}: flip is not an involution");
                    assert_eq!(k, i);
                }
            }
        }
    }

    #[test]
    fn flip_graph_shapes() {
        let g = FlipGraph::build("mobius:2".parse().unwrap()).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert!(g.is_connected());
        assert!(g.is_regular_of_degree(2));
        assert_eq!(g.edge_count(), 6);

        let g = FlipGraph::build("polygon:6".parse().unwrap()).unwrap();
        assert_eq!(g.vertex_count(), 14);
        assert!(g.is_regular_of_degree(3));
        assert!(g.is_connected());

        for n in 1..=5 {
            let g = FlipGraph::build(format!("mobius:{n}").parse().unwrap()).unwrap();
            assert!(g.is_connected(), "mobius:{n}");
            assert!(g.is_regular_of_degree(n), "mobius:{n}");
        }
    }

    #[test]
    fn b_arcs_examples() {
        let s: Surface = "mobius:2".parse().unwrap();
        // {P(1,1), C(1,1)}: the loop flips to C(1,2), so it is a b-arc.
        assert_eq!(
            b_arcs(s, &facet(&["P(1,1)", "C(1,1)"])).unwrap(),
            vec![QuasiArc::Plain(1, 1)]
        );
        // A crossing-only triangulation has no plain arcs at all.
        assert_eq!(b_arcs(s, &facet(&["C(1,1)", "C(1,2)"])).unwrap(), vec![]);
        // mu makes it a quasi-triangulation, not a triangulation.
        assert!(b_arcs(s, &facet(&["mu", "P(1,1)"])).is_err());

        // On mobius:3, the loop bounding the crosscap region flips to a
        // crossing arc at a gap point, so it is the b-arc.
        let s3: Surface = "mobius:3".parse().unwrap();
        let f = facet(&["C(1,1)", "P(1,1)", "P(1,3)"]);
        assert_eq!(b_arcs(s3, &f).unwrap(), vec![QuasiArc::Plain(1, 1)]);
    }
}
